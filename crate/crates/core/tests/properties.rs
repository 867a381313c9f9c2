//! Property tests for the coding invariants the whole stack leans on.

use flashmod_core::channel::{
    apply_interference, max_shift, program_grid, CouplingParams, LevelStats, StateDistribution,
};
use flashmod_core::codebook::{build_codebook, BoundaryPolicy};
use flashmod_core::ecc::{deinterleave, interleave};
use flashmod_core::epattern::{count_patterns, StateGrid};
use flashmod_core::nrzi::{nrzi_decode, nrzi_encode};
use flashmod_core::rll::{rll17_decode, rll17_encode};
use proptest::collection::vec as pvec;
use proptest::prelude::*;

fn max_zero_run(s: &[u8]) -> usize {
    let mut best = 0;
    let mut run = 0;
    for &b in s {
        if b == 0 {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// Shortest run of identical symbols that does not touch either end of the
/// stream. Boundary runs are allowed to be shorter; an isolated symbol at
/// the edge has a single x neighbour and cannot form a doubly-flanked
/// victim.
fn min_interior_run(s: &[u8]) -> usize {
    let mut runs = Vec::new();
    let mut len = 0usize;
    for i in 0..s.len() {
        len += 1;
        if i + 1 == s.len() || s[i + 1] != s[i] {
            runs.push(len);
            len = 0;
        }
    }
    if runs.len() <= 2 {
        return usize::MAX;
    }
    runs[1..runs.len() - 1].iter().copied().min().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn rll_round_trips_and_satisfies_the_constraint(data in pvec(0u8..2, 0..400)) {
        let data = if data.len() % 2 == 0 { data } else { data[..data.len() - 1].to_vec() };
        let coded = rll17_encode(&data).unwrap();
        prop_assert_eq!(coded.len(), data.len() / 2 * 3);
        prop_assert!(!coded.windows(2).any(|w| w == [1, 1]));
        prop_assert!(max_zero_run(&coded) <= 7);
        prop_assert_eq!(rll17_decode(&coded).unwrap(), data);
    }

    #[test]
    fn nrzi_over_d1_streams_has_interior_runs_of_two(data in pvec(0u8..2, 1..300), init in 0u8..2) {
        let data = if data.len() % 2 == 0 { data } else { data[..data.len() - 1].to_vec() };
        let coded = rll17_encode(&data).unwrap();
        let levels = nrzi_encode(&coded, init);
        prop_assert_eq!(nrzi_decode(&levels, init), coded);
        prop_assert!(min_interior_run(&levels) >= 2);
    }

    #[test]
    fn interleave_is_a_bijection(
        cols in 0usize..40,
        rows in 1usize..20,
        seed in any::<u64>(),
    ) {
        let mut rng = flashmod_core::rng::Rng::new(seed);
        let page: Vec<Vec<u8>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.next_bit()).collect())
            .collect();
        let stream = interleave(&page).unwrap();
        prop_assert_eq!(deinterleave(&stream, rows).unwrap(), page);
    }

    #[test]
    fn quaternary_codebook_round_trips(words in 1usize..30, seed in any::<u64>()) {
        let cb = build_codebook(2, 5, 8, BoundaryPolicy::ExcludeLevelAtEnds(0)).unwrap();
        let mut rng = flashmod_core::rng::Rng::new(seed);
        let data: Vec<u8> = (0..words * 8).map(|_| rng.next_bit()).collect();
        let symbols = cb.encode(&data).unwrap();
        prop_assert_eq!(cb.decode(&symbols).unwrap(), data);
    }
}

#[test]
fn slc_shift_distribution_is_the_three_point_mixture() {
    // Random equiprobable SLC data with x-only coupling: an E cell gains
    // 0, one or two aggressor shifts with probabilities 1/4, 1/2, 1/4.
    let mut rng = flashmod_core::rng::Rng::new(404);
    let rows = 100;
    let cols = 1200;
    let levels: Vec<u8> = (0..rows * cols).map(|_| rng.next_bit()).collect();
    let grid = StateGrid::from_levels(1, rows, cols, levels).unwrap();
    let cells = program_grid(grid, StateDistribution::slc(), 11).unwrap();
    let p = CouplingParams::x_only(0.2);
    let cells = apply_interference(cells, &p);

    let step = p.effective_x() * 2.0; // one aggressor's contribution
    let mut buckets = [0u64; 3];
    let mut e_cells = 0u64;
    for (idx, &level) in cells.states.levels().iter().enumerate() {
        // Interior columns only: edge cells are missing an x neighbour.
        if level != 0 || idx % cols == 0 || idx % cols == cols - 1 {
            continue;
        }
        e_cells += 1;
        let k = (cells.shift[idx] / step).round() as usize;
        assert!(k <= 2, "unexpected shift {}", cells.shift[idx]);
        buckets[k] += 1;
    }
    assert!(e_cells > 50_000);
    let weights: Vec<f64> = buckets.iter().map(|&b| b as f64 / e_cells as f64).collect();
    assert!((weights[0] - 0.25).abs() < 0.02, "w0 {}", weights[0]);
    assert!((weights[1] - 0.50).abs() < 0.02, "w1 {}", weights[1]);
    assert!((weights[2] - 0.25).abs() < 0.02, "w2 {}", weights[2]);
}

#[test]
fn monte_carlo_shifts_never_exceed_the_closed_form() {
    let p = CouplingParams::reference_ratios(1.5);
    let bound = max_shift(&p);
    let mut rng = flashmod_core::rng::Rng::new(2024);
    let mut hit_bound = false;
    for trial in 0..40 {
        let levels: Vec<u8> = (0..30 * 30).map(|_| rng.next_bit()).collect();
        let grid = StateGrid::from_levels(1, 30, 30, levels).unwrap();
        let has_worst_victim = count_patterns(&grid).count(2, 2, 4) > 0;
        let cells = program_grid(grid, StateDistribution::slc(), trial).unwrap();
        let cells = apply_interference(cells, &p);
        let worst = cells.shift.iter().cloned().fold(0.0f64, f64::max);
        assert!(worst <= bound + 1e-12, "shift {worst} above bound {bound}");
        if has_worst_victim {
            assert!((worst - bound).abs() < 1e-12);
            hit_bound = true;
        }
    }
    assert!(hit_bound, "no grid contained a fully surrounded victim");
}

#[test]
fn mlc_shift_uses_the_neighbour_programming_shift() {
    // A 2-bit neighbour at level 2 contributes mean(2) - mean(0), not the
    // E-to-PH shift.
    let dist = StateDistribution::new(vec![
        LevelStats { mean: -1.0, std_dev: 1e-12 },
        LevelStats { mean: 0.3, std_dev: 1e-12 },
        LevelStats { mean: 1.1, std_dev: 1e-12 },
        LevelStats { mean: 2.0, std_dev: 1e-12 },
    ])
    .unwrap();
    let grid = StateGrid::from_levels(2, 1, 3, vec![2, 0, 1]).unwrap();
    let cells = program_grid(grid, dist, 0).unwrap();
    let cells = apply_interference(cells, &CouplingParams::x_only(0.1));
    let expected = 0.1 * (2.1 + 1.3);
    assert!((cells.shift[1] - expected).abs() < 1e-12);
}
