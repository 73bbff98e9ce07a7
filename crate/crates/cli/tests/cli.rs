use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cbgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbgraph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen_file(dir: &Path, family: &str, name: &str) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let o = cbgraph(&["gen", family, "-o", &path]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn check_petersen_holds() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen_file(dir.path(), "petersen", "petersen.el");
    let o = cbgraph(&["check", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cb=true method_agreement=6/6"));
}

#[test]
fn check_pt_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen_file(dir.path(), "pt", "pt.el");
    assert!(Path::new(&format!("{file}.labels")).exists());
    let o = cbgraph(&["check", &file]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("cb=false"));
    assert!(s.contains("direct: cb=false witness=ball center="), "{s}");
    assert!(s.contains("rerun=cbgraph check"));
}

#[test]
fn gen_to_stdout_round_trips() {
    let o = cbgraph(&["gen", "petersen", "-o", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let edges = s.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(edges, 15);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.el");
    fs::write(&file, &s).unwrap();
    let again = cbgraph(&["--format", "kv", "check", file.to_str().unwrap()]);
    assert!(stdout(&again).lines().any(|l| l == "cb=true"));
}

#[test]
fn kv_output_is_deterministic_across_threads() {
    for args in [
        &["check", "gen:pp1"][..],
        &["conditions", "gen:ctreex"],
        &["helly", "gen:petersen"],
        &["fellow", "gen:wedge:5:5", "--samples", "500", "--seed", "3"],
        &["dismantle", "gen:gk:3", "--power", "3"],
        &["cover", "gen:pentagon-chain:3", "--base", "2", "--radius", "4"],
    ] {
        let run = |threads: &str| {
            let mut a = vec!["--format", "kv", "--threads", threads];
            a.extend_from_slice(args);
            let o = cbgraph(&a);
            (o.status.code(), o.stdout)
        };
        let one = run("1");
        assert_eq!(one, run("1"), "{args:?}");
        assert_eq!(one, run("4"), "{args:?}");
    }
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(cbgraph(&["check"]).status.code(), Some(2));
    assert_eq!(cbgraph(&["check", "/nonexistent/graph.el"]).status.code(), Some(2));
    assert_eq!(cbgraph(&["gen", "nosuchfamily"]).status.code(), Some(2));
    assert_eq!(cbgraph(&["stabilize", "gen:cycle:5", "--perm", "1,0,2,3,4"]).status.code(), Some(2));
    assert_eq!(cbgraph(&["comb", "gen:cycle:5", "0", "9"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.el");
    fs::write(&bad, "0 1\n2 3\n").unwrap();
    assert_eq!(cbgraph(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn property_failures_exit_1() {
    assert_eq!(cbgraph(&["check", "gen:cycle:6"]).status.code(), Some(1));
    assert_eq!(cbgraph(&["substructures", "gen:pp2"]).status.code(), Some(1));
    assert_eq!(cbgraph(&["dismantle", "gen:cycle:6", "--power", "1"]).status.code(), Some(1));
    assert_eq!(cbgraph(&["cover", "gen:pt", "--radius", "4"]).status.code(), Some(1));
}

#[test]
fn named_commands_report_expected_values() {
    let s = stdout(&cbgraph(&["helly", "gen:petersen"]));
    assert!(s.contains("h=4 ") && s.contains("h2=4 "), "{s}");
    let s = stdout(&cbgraph(&["stabilize", "gen:circulant:9:1,2", "--perm", "1,2,3,4,5,6,7,8,0"]));
    assert!(s.contains("stabilized_clique=none stabilized_five_cycle=none"), "{s}");
    assert!(s.contains("convex_set=[0,1,2,3,4,5,6,7,8] diameter=2"), "{s}");
    let s = stdout(&cbgraph(&["comb", "gen:petersen", "0", "7", "--unique"]));
    assert!(s.contains("normal_paths=1 unique=true"), "{s}");
    let s = stdout(&cbgraph(&["fftp", "gen:cycle:5", "--max-len", "4"]));
    assert!(s.contains("max_async_k=2"), "{s}");
    let s = stdout(&cbgraph(&["core", "gen:path:6"]));
    assert!(s.contains("core_size=1"), "{s}");
}

#[test]
fn cover_emits_edge_list_and_map() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cover.el");
    let o = cbgraph(&["cover", "gen:cycle:13", "--radius", "6", "--emit", "edgelist", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let edges = fs::read_to_string(&out).unwrap();
    assert_eq!(edges.lines().filter(|l| !l.starts_with('#')).count(), 12);
    let map = fs::read_to_string(dir.path().join("cover.el.map")).unwrap();
    assert_eq!(map.lines().count(), 13);
    assert!(map.lines().all(|l| l.split_whitespace().count() == 3));
    let check = cbgraph(&["check", out.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}
