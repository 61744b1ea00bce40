//! Distance orderings that flip between topologically equivalent metrics.

use bloch_geometry::analysis::{
    check_ranking, classical_violation_points, equidistance_check, equidistant_states,
    find_ranking_violations, quantum_violation_states, PointPair, RankingCase,
};
use bloch_geometry::metrics::MetricKind;

pub struct RankingSummary {
    pub classical: RankingCase,
    pub quantum: RankingCase,
    pub sjoqvist_ties: usize,
    pub bures_ties: usize,
    pub random_violations: usize,
    pub random_trials: usize,
}

pub fn run_example() -> Result<RankingSummary, Box<dyn std::error::Error>> {
    let [p1, p2, p3] = classical_violation_points();
    let classical = check_ranking(
        PointPair::Cartesian(p1, p2),
        PointPair::Cartesian(p1, p3),
        MetricKind::Euclid,
        MetricKind::Taxicab,
    )?;
    let [q1, q2, q3, q4] = quantum_violation_states();
    let quantum = check_ranking(
        PointPair::Planar(q1, q2),
        PointPair::Planar(q3, q4),
        MetricKind::Bures,
        MetricKind::Sjoqvist,
    )?;
    let [e1, e2, e3, e4] = equidistant_states();
    let pairs = [(e1, e2), (e3, e4)];
    let search = find_ranking_violations(42, 10_000, MetricKind::Bures, MetricKind::Sjoqvist)?;
    Ok(RankingSummary {
        classical,
        quantum,
        sjoqvist_ties: equidistance_check(&pairs, MetricKind::Sjoqvist)?
            .ties()
            .count(),
        bures_ties: equidistance_check(&pairs, MetricKind::Bures)?
            .ties()
            .count(),
        random_violations: search.violations.len(),
        random_trials: search.n_trials,
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = run_example()?;
    for case in [&s.classical, &s.quantum] {
        println!(
            "{} ({:.4}, {:.4}) vs {} ({:.4}, {:.4}): violated = {}",
            case.metric_a,
            case.d_a.0,
            case.d_a.1,
            case.metric_b,
            case.d_b.0,
            case.d_b.1,
            case.violated
        );
    }
    println!(
        "tied pairs: sjoqvist {}, bures {}",
        s.sjoqvist_ties, s.bures_ties
    );
    println!(
        "random search: {} of {} trials flip",
        s.random_violations, s.random_trials
    );
    Ok(())
}
