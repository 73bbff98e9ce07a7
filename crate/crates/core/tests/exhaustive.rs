use rayon::prelude::*;

use cbgraph::conditions::{global_check, is_cb, recognize_all, ConditionId};
use cbgraph::convexity::has_k_convex_balls;
use cbgraph::generators::{all_connected_graphs, random_corpus};
use cbgraph::all_pairs_distances;

const CONNECTED: [usize; 9] = [0, 1, 1, 2, 6, 21, 112, 853, 11117];
const CB: [usize; 9] = [0, 1, 1, 2, 5, 16, 61, 293, 1762];

#[test]
fn every_recognizer_agrees_up_to_eight_vertices() {
    for n in 1..=8 {
        let graphs = all_connected_graphs(n);
        assert_eq!(graphs.len(), CONNECTED[n], "n={n}");
        let cb = graphs
            .par_iter()
            .map(|g| {
                let d = all_pairs_distances(g).unwrap();
                let verdicts = recognize_all(&d);
                assert!(verdicts.iter().all(|v| v.is_cb == verdicts[0].is_cb), "{:?}", g.edges().collect::<Vec<_>>());
                let two = has_k_convex_balls(&d, 2).holds;
                assert_eq!(two, global_check(&d, ConditionId::INC, None).holds);
                assert_eq!(two, global_check(&d, ConditionId::INCPlus, None).holds);
                usize::from(verdicts[0].is_cb)
            })
            .sum::<usize>();
        assert_eq!(cb, CB[n], "n={n}");
    }
}

#[test]
fn random_corpus_cb_fraction() {
    let corpus = random_corpus(8, 1000, 8);
    let cb = corpus.iter().filter(|g| is_cb(&all_pairs_distances(g).unwrap())).count();
    assert_eq!(cb, 628);
}
