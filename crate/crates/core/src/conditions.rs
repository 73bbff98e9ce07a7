//! Local metric conditions (triangle, quadrangle, pentagon, interval neighborhood)
//! as witness-producing predicates, and CB recognition through each equivalent
//! characterization.

use std::fmt;

use thiserror::Error;

use crate::convexity::{has_convex_balls, has_convex_balls_exhaustive, ConvexityViolation};
use crate::metric::DistanceOracle;
use crate::substructures::{first_forbidden, Forbidden};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    TC,
    QC,
    PC0,
    PC1,
    PC2,
    PCPlus,
    INC0,
    INC,
    INCPlus,
    TPC0,
    TPC1,
    TPC2,
    TPCPlus,
}

impl ConditionId {
    pub const ALL: [ConditionId; 13] = [
        ConditionId::TC,
        ConditionId::QC,
        ConditionId::PC0,
        ConditionId::PC1,
        ConditionId::PC2,
        ConditionId::PCPlus,
        ConditionId::INC0,
        ConditionId::INC,
        ConditionId::INCPlus,
        ConditionId::TPC0,
        ConditionId::TPC1,
        ConditionId::TPC2,
        ConditionId::TPCPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionId::TC => "TC",
            ConditionId::QC => "QC",
            ConditionId::PC0 => "PC0",
            ConditionId::PC1 => "PC1",
            ConditionId::PC2 => "PC2",
            ConditionId::PCPlus => "PC+",
            ConditionId::INC0 => "INC0",
            ConditionId::INC => "INC",
            ConditionId::INCPlus => "INC+",
            ConditionId::TPC0 => "TPC0",
            ConditionId::TPC1 => "TPC1",
            ConditionId::TPC2 => "TPC2",
            ConditionId::TPCPlus => "TPC+",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PcVariant {
    PC0,
    PC1,
    PC2,
    PCPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IncVariant {
    INC0,
    INC,
    INCPlus,
}

/// Where a condition was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Locus {
    /// `v` and an edge `xy` with `d(v,x) = d(v,y) = k`.
    Edge { v: usize, x: usize, y: usize, k: usize },
    /// `v`, non-adjacent `x, y` at distance `k`, common neighbor `u` at `k + 1`.
    Square { v: usize, x: usize, y: usize, u: usize, k: usize },
    /// Ordered pair `(u, v)` at distance `k`.
    Pair { u: usize, v: usize, k: usize },
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Locus::Edge { v, x, y, k } => write!(f, "v={v} x={x} y={y} k={k}"),
            Locus::Square { v, x, y, u, k } => write!(f, "v={v} x={x} y={y} u={u} k={k}"),
            Locus::Pair { u, v, k } => write!(f, "u={u} v={v} k={k}"),
        }
    }
}

/// Global verdict for one condition, with the first failing locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionWitness {
    pub condition: ConditionId,
    pub holds: bool,
    pub locus: Option<Locus>,
}

fn edge_pre(d: &DistanceOracle, v: usize, x: usize, y: usize, min_k: usize) -> Result<usize, ConditionError> {
    let k = d.d(v, x);
    if !d.adjacent(x, y) || d.d(v, y) != k || k < min_k {
        return Err(ConditionError::PreconditionViolated(format!(
            "need x~y and d(v,x)=d(v,y)>={min_k}; got v={v} x={x} y={y}"
        )));
    }
    Ok(k)
}

fn tc_unchecked(d: &DistanceOracle, v: usize, x: usize, y: usize, k: usize) -> bool {
    d.graph()
        .neighbors(x)
        .iter()
        .any(|&z| d.adjacent(z, y) && d.d(v, z) < k)
}

/// Triangle condition at `(v, xy)`: a common neighbor of `x, y` in `B_{k-1}(v)`.
pub fn check_tc(d: &DistanceOracle, v: usize, x: usize, y: usize) -> Result<bool, ConditionError> {
    let k = edge_pre(d, v, x, y, 1)?;
    Ok(tc_unchecked(d, v, x, y, k))
}

fn qc_unchecked(d: &DistanceOracle, v: usize, x: usize, y: usize, u: usize, k: usize) -> bool {
    d.graph()
        .neighbors(x)
        .iter()
        .any(|&z| d.adjacent(z, y) && d.d(v, z) < k && !d.adjacent(z, u) && z != u)
}

/// Quadrangle condition at `(v; x, y; u)`: some `z ∈ B_{k-1}(v)` makes `xzyu` an induced square.
pub fn check_qc(d: &DistanceOracle, v: usize, x: usize, y: usize, u: usize) -> Result<bool, ConditionError> {
    let k = d.d(v, x);
    let ok = x != y
        && d.d(v, y) == k
        && d.d(v, u) == k + 1
        && d.adjacent(u, x)
        && d.adjacent(u, y)
        && !d.adjacent(x, y);
    if !ok {
        return Err(ConditionError::PreconditionViolated(format!(
            "need d(v,x)=d(v,y)=d(v,u)-1, u~x,y, x!~y; got v={v} x={x} y={y} u={u}"
        )));
    }
    Ok(qc_unchecked(d, v, x, y, u, k))
}

/// `x w z w' y` closes to an induced pentagon with the levels `k, k-1, k-2, k-1, k`.
/// Caller guarantees `x ~ y`, `w ~ x`, `w' ~ y` and the levels of `w, w'`.
#[inline]
fn pentagon_closes(d: &DistanceOracle, v: usize, x: usize, w: usize, z: usize, wp: usize, y: usize, k: usize) -> bool {
    w != wp
        && d.d(v, z) + 2 == k
        && d.adjacent(w, z)
        && d.adjacent(wp, z)
        && !d.adjacent(w, wp)
        && !d.adjacent(w, y)
        && !d.adjacent(wp, x)
}

fn pc_unchecked(d: &DistanceOracle, variant: PcVariant, v: usize, x: usize, y: usize, k: usize) -> bool {
    let wx = d.toward(x, v);
    let wy = d.toward(y, v);
    let zs_of = |w: usize| -> Vec<usize> {
        d.graph()
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&z| d.d(v, z) + 2 == k)
            .collect()
    };
    let serves = |w: usize, wp: usize, z: usize| pentagon_closes(d, v, x, w, z, wp, y, k);
    match variant {
        PcVariant::PC0 => wx
            .iter()
            .any(|&w| zs_of(w).iter().any(|&z| wy.iter().any(|&wp| serves(w, wp, z)))),
        PcVariant::PC1 => wx
            .iter()
            .all(|&w| zs_of(w).iter().any(|&z| wy.iter().any(|&wp| serves(w, wp, z)))),
        PcVariant::PCPlus => wy.iter().any(|&wp| {
            zs_of(wp)
                .iter()
                .any(|&z| wx.iter().all(|&w| serves(w, wp, z)))
        }),
        PcVariant::PC2 => (0..d.n())
            .filter(|&t| d.d(v, t) + 2 <= k)
            .all(|t| (d.d(x, t) <= 2) == (d.d(y, t) <= 2)),
    }
}

/// Pentagon condition variants at `(v, xy)`, oriented: `PC1` and `PC+` quantify
/// over the neighbors of `x` toward `v`.
///
/// For `k = 2` the apex `z` may be `v` itself.
pub fn check_pc(
    d: &DistanceOracle,
    variant: PcVariant,
    v: usize,
    x: usize,
    y: usize,
) -> Result<bool, ConditionError> {
    let k = edge_pre(d, v, x, y, 2)?;
    Ok(pc_unchecked(d, variant, v, x, y, k))
}

fn inc_unchecked(d: &DistanceOracle, variant: IncVariant, u: usize, v: usize) -> bool {
    let k = d.d(u, v);
    let w = d.toward(u, v);
    let clique = w
        .iter()
        .enumerate()
        .all(|(i, &a)| w[i + 1..].iter().all(|&b| d.adjacent(a, b)));
    if !clique || variant == IncVariant::INC0 || k < 2 {
        return clique;
    }
    let below = |z: usize| d.d(z, v) + 2 == k;
    match variant {
        IncVariant::INC => w.iter().enumerate().all(|(i, &a)| {
            w[i + 1..].iter().all(|&b| {
                d.graph()
                    .neighbors(a)
                    .iter()
                    .any(|&z| below(z) && d.adjacent(z, b))
            })
        }),
        IncVariant::INCPlus => d.graph().neighbors(w[0]).iter().any(|&z| {
            below(z) && w.iter().all(|&a| d.adjacent(z, a))
        }),
        IncVariant::INC0 => unreachable!(),
    }
}

/// Interval neighborhood conditions at the ordered pair `(u, v)`.
pub fn check_inc(d: &DistanceOracle, variant: IncVariant, u: usize, v: usize) -> Result<bool, ConditionError> {
    if u == v {
        return Err(ConditionError::PreconditionViolated(format!("u = v = {u}")));
    }
    Ok(inc_unchecked(d, variant, u, v))
}

/// Edge loci `(v, x, y, k)` with `x < y`, `v` ascending, `1 <= k <= max_dist`.
fn edge_loci(d: &DistanceOracle, max_dist: Option<usize>) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
    let edges: Vec<(usize, usize)> = d.graph().edges().collect();
    (0..d.n()).flat_map(move |v| {
        edges
            .clone()
            .into_iter()
            .filter_map(move |(x, y)| {
                let k = d.d(v, x);
                (k >= 1 && d.d(v, y) == k && max_dist.is_none_or(|m| k <= m)).then_some((v, x, y, k))
            })
    })
}

fn pc_both(d: &DistanceOracle, variant: PcVariant, v: usize, x: usize, y: usize, k: usize) -> Option<(usize, usize)> {
    if !pc_unchecked(d, variant, v, x, y, k) {
        return Some((x, y));
    }
    if matches!(variant, PcVariant::PC1 | PcVariant::PCPlus) && !pc_unchecked(d, variant, v, y, x, k) {
        return Some((y, x));
    }
    None
}

/// First failing edge locus for `TC`, `PCi` or `TPCi`.
fn edge_condition(d: &DistanceOracle, id: ConditionId, max_dist: Option<usize>) -> Option<Locus> {
    let (use_tc, pc) = match id {
        ConditionId::TC => (true, None),
        ConditionId::PC0 => (false, Some(PcVariant::PC0)),
        ConditionId::PC1 => (false, Some(PcVariant::PC1)),
        ConditionId::PC2 => (false, Some(PcVariant::PC2)),
        ConditionId::PCPlus => (false, Some(PcVariant::PCPlus)),
        ConditionId::TPC0 => (true, Some(PcVariant::PC0)),
        ConditionId::TPC1 => (true, Some(PcVariant::PC1)),
        ConditionId::TPC2 => (true, Some(PcVariant::PC2)),
        ConditionId::TPCPlus => (true, Some(PcVariant::PCPlus)),
        _ => unreachable!("not an edge condition"),
    };
    for (v, x, y, k) in edge_loci(d, max_dist) {
        if use_tc && tc_unchecked(d, v, x, y, k) {
            continue;
        }
        let failure = match pc {
            None => Some((x, y)),
            // PC constrains only k >= 2; at k = 1 only TC can be asked for.
            Some(_) if k < 2 => {
                if use_tc {
                    Some((x, y))
                } else {
                    None
                }
            }
            Some(var) => pc_both(d, var, v, x, y, k),
        };
        if let Some((a, b)) = failure {
            return Some(Locus::Edge { v, x: a, y: b, k });
        }
    }
    None
}

fn qc_condition(d: &DistanceOracle, max_dist: Option<usize>) -> Option<Locus> {
    let n = d.n();
    for v in 0..n {
        for u in 0..n {
            let ku = d.d(v, u);
            if ku < 2 || max_dist.is_some_and(|m| ku - 1 > m) {
                continue;
            }
            let below = d.toward(u, v);
            for (i, &x) in below.iter().enumerate() {
                for &y in &below[i + 1..] {
                    if !d.adjacent(x, y) && !qc_unchecked(d, v, x, y, u, ku - 1) {
                        return Some(Locus::Square { v, x, y, u, k: ku - 1 });
                    }
                }
            }
        }
    }
    None
}

fn inc_condition(d: &DistanceOracle, variant: IncVariant, max_dist: Option<usize>) -> Option<Locus> {
    let n = d.n();
    for u in 0..n {
        for v in 0..n {
            let k = d.d(u, v);
            if u == v || max_dist.is_some_and(|m| k > m) {
                continue;
            }
            if !inc_unchecked(d, variant, u, v) {
                return Some(Locus::Pair { u, v, k });
            }
        }
    }
    None
}

/// Evaluates one condition at every admissible locus (distances bounded by `max_dist`).
pub fn global_check(d: &DistanceOracle, id: ConditionId, max_dist: Option<usize>) -> ConditionWitness {
    let locus = match id {
        ConditionId::QC => qc_condition(d, max_dist),
        ConditionId::INC0 => inc_condition(d, IncVariant::INC0, max_dist),
        ConditionId::INC => inc_condition(d, IncVariant::INC, max_dist),
        ConditionId::INCPlus => inc_condition(d, IncVariant::INCPlus, max_dist),
        other => edge_condition(d, other, max_dist),
    };
    ConditionWitness {
        condition: id,
        holds: locus.is_none(),
        locus,
    }
}

/// One witness per [`ConditionId`], in declaration order.
pub fn global_report(d: &DistanceOracle, max_dist: Option<usize>) -> Vec<ConditionWitness> {
    ConditionId::ALL
        .iter()
        .map(|&id| global_check(d, id, max_dist))
        .collect()
}

/// Re-evaluates a single locus; used to confirm reported failures.
pub fn check_locus(d: &DistanceOracle, id: ConditionId, locus: &Locus) -> Result<bool, ConditionError> {
    let pc = |var, v, x, y| check_pc(d, var, v, x, y);
    match (*locus, id) {
        (Locus::Edge { v, x, y, .. }, ConditionId::TC) => check_tc(d, v, x, y),
        (Locus::Edge { v, x, y, .. }, ConditionId::PC0) => pc(PcVariant::PC0, v, x, y),
        (Locus::Edge { v, x, y, .. }, ConditionId::PC1) => pc(PcVariant::PC1, v, x, y),
        (Locus::Edge { v, x, y, .. }, ConditionId::PC2) => pc(PcVariant::PC2, v, x, y),
        (Locus::Edge { v, x, y, .. }, ConditionId::PCPlus) => pc(PcVariant::PCPlus, v, x, y),
        (Locus::Edge { v, x, y, k }, tpc) => {
            let var = match tpc {
                ConditionId::TPC0 => PcVariant::PC0,
                ConditionId::TPC1 => PcVariant::PC1,
                ConditionId::TPC2 => PcVariant::PC2,
                ConditionId::TPCPlus => PcVariant::PCPlus,
                _ => return Err(ConditionError::PreconditionViolated("edge locus for a pair condition".into())),
            };
            Ok(check_tc(d, v, x, y)? || (k >= 2 && pc(var, v, x, y)?))
        }
        (Locus::Square { v, x, y, u, .. }, ConditionId::QC) => check_qc(d, v, x, y, u),
        (Locus::Pair { u, v, .. }, ConditionId::INC0) => check_inc(d, IncVariant::INC0, u, v),
        (Locus::Pair { u, v, .. }, ConditionId::INC) => check_inc(d, IncVariant::INC, u, v),
        (Locus::Pair { u, v, .. }, ConditionId::INCPlus) => check_inc(d, IncVariant::INCPlus, u, v),
        _ => Err(ConditionError::PreconditionViolated(format!("locus kind does not fit {id}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CbMethod {
    /// Convex balls by definition.
    Direct,
    IncTpc0,
    IncTpc1,
    IncTpc2,
    IncPlusTpcPlus,
    /// Forbidden isometric cycles and pentagon-pair patterns.
    Structural,
}

impl CbMethod {
    pub const ALL: [CbMethod; 6] = [
        CbMethod::Direct,
        CbMethod::IncTpc0,
        CbMethod::IncTpc1,
        CbMethod::IncTpc2,
        CbMethod::IncPlusTpcPlus,
        CbMethod::Structural,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CbMethod::Direct => "DIRECT",
            CbMethod::IncTpc0 => "INC_TPC0",
            CbMethod::IncTpc1 => "INC_TPC1",
            CbMethod::IncTpc2 => "INC_TPC2",
            CbMethod::IncPlusTpcPlus => "INCP_TPCP",
            CbMethod::Structural => "STRUCTURAL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CbWitness {
    Convexity(ConvexityViolation),
    Condition(ConditionId, Locus),
    Structure(Forbidden),
}

impl fmt::Display for CbWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CbWitness::Convexity(v) => write!(
                f,
                "ball center={} radius={} x={} y={} z={}",
                v.center.unwrap_or(v.x),
                v.radius.unwrap_or(0),
                v.x,
                v.y,
                v.z
            ),
            CbWitness::Condition(id, locus) => write!(f, "{id} fails at {locus}"),
            CbWitness::Structure(fb) => write!(f, "{fb}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbVerdict {
    pub method: CbMethod,
    pub is_cb: bool,
    pub witness: Option<CbWitness>,
}

/// CB recognition through one of the equivalent characterizations.
pub fn recognize_cb(d: &DistanceOracle, method: CbMethod) -> CbVerdict {
    let pair = |inc: ConditionId, tpc: ConditionId| {
        let a = global_check(d, inc, None);
        if let Some(l) = a.locus {
            return Some(CbWitness::Condition(inc, l));
        }
        global_check(d, tpc, None).locus.map(|l| CbWitness::Condition(tpc, l))
    };
    let witness = match method {
        CbMethod::Direct => has_convex_balls_exhaustive(d).violation.map(CbWitness::Convexity),
        CbMethod::IncTpc0 => pair(ConditionId::INC, ConditionId::TPC0),
        CbMethod::IncTpc1 => pair(ConditionId::INC, ConditionId::TPC1),
        CbMethod::IncTpc2 => pair(ConditionId::INC, ConditionId::TPC2),
        CbMethod::IncPlusTpcPlus => pair(ConditionId::INCPlus, ConditionId::TPCPlus),
        CbMethod::Structural => first_forbidden(d).map(CbWitness::Structure),
    };
    CbVerdict {
        method,
        is_cb: witness.is_none(),
        witness,
    }
}

/// Runs all six methods; the verdicts always coincide.
pub fn recognize_all(d: &DistanceOracle) -> Vec<CbVerdict> {
    CbMethod::ALL.iter().map(|&m| recognize_cb(d, m)).collect()
}

/// Convenience: the fast 3-convexity verdict.
pub fn is_cb(d: &DistanceOracle) -> bool {
    has_convex_balls(d).holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::metric::all_pairs_distances;

    fn cycle(n: usize) -> DistanceOracle {
        all_pairs_distances(&Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()).unwrap()
    }

    #[test]
    fn tc_on_triangle_and_pentagon() {
        let k3 = all_pairs_distances(&Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap();
        assert_eq!(check_tc(&k3, 0, 1, 2), Ok(true));
        let c5 = cycle(5);
        assert_eq!(check_tc(&c5, 0, 2, 3), Ok(false));
        for var in [PcVariant::PC0, PcVariant::PC1, PcVariant::PC2, PcVariant::PCPlus] {
            assert_eq!(check_pc(&c5, var, 0, 2, 3), Ok(true));
        }
        assert!(check_tc(&c5, 0, 1, 3).is_err());
    }

    #[test]
    fn qc_in_c4_uses_base_vertex() {
        let c4 = cycle(4);
        assert_eq!(check_qc(&c4, 0, 1, 3, 2), Ok(true));
    }

    #[test]
    fn qc_in_k23_is_served_by_the_base() {
        // Parts {0,1} and {2,3,4}: with v = 0, u = 1 the base itself closes the square.
        let g = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let d = all_pairs_distances(&g).unwrap();
        assert_eq!(check_qc(&d, 0, 2, 3, 1), Ok(true));
        assert!(global_check(&d, ConditionId::QC, None).holds);
    }

    #[test]
    fn inc_on_c4_and_adjacent_pairs() {
        let c4 = cycle(4);
        assert_eq!(check_inc(&c4, IncVariant::INC0, 0, 2), Ok(false));
        for var in [IncVariant::INC0, IncVariant::INC, IncVariant::INCPlus] {
            assert_eq!(check_inc(&c4, var, 0, 1), Ok(true));
        }
        assert!(check_inc(&c4, IncVariant::INC, 1, 1).is_err());
    }

    #[test]
    fn c7_fails_tpc_but_keeps_inc0() {
        let d = cycle(7);
        assert!(global_check(&d, ConditionId::INC0, None).holds);
        let w = global_check(&d, ConditionId::TPC0, None);
        assert!(!w.holds);
        assert_eq!(check_locus(&d, ConditionId::TPC0, &w.locus.unwrap()), Ok(false));
    }

    #[test]
    fn max_dist_bounds_the_loci() {
        let d = cycle(7);
        assert!(global_check(&d, ConditionId::TPC0, Some(2)).holds);
        assert!(!global_check(&d, ConditionId::TPC0, Some(3)).holds);
    }
}
