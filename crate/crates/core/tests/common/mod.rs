//! Shared builders for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use mistp::milp::{LinearProgram, Sense};
use mistp::model::{Dimensions, Instance};
use mistp::Trapezoid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const REF_L1: f64 = 8166.6;
pub const REF_U1: f64 = 8211.6;
pub const REF_L2: f64 = 770.1767;
pub const REF_U2: f64 = 785.95;
pub const REF_LAMBDA: f64 = 0.7077;
/// Aggregates printed next to the global-criterion listing.
pub const REF_GC_POINT: (f64, f64) = (8198.6, 771.1);

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn steel() -> Instance {
    mistp::io::parse_instance(fixture("steel.json")).expect("fixture parses")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_trapezoid(rng: &mut impl Rng, lo: f64, hi: f64) -> Trapezoid {
    let mut r: [f64; 4] = std::array::from_fn(|_| rng.gen_range(lo..hi));
    r.sort_by(f64::total_cmp);
    Trapezoid::new(r[0], r[1], r[2], r[3]).unwrap()
}

/// One source, destination, vehicle and product: 10 units, 4 per trip, 5 trips
/// available, crisp cost 5 and travel 2 h per trip, 6 min handling per unit.
pub fn toy() -> Instance {
    let crisp = Trapezoid::crisp;
    Instance {
        dims: Dimensions { m: 1, n: 1, k: 1, l: 1 },
        cost: vec![vec![vec![crisp(5.0)]]],
        travel_time: vec![vec![vec![crisp(2.0)]]],
        handling_time: vec![vec![crisp(6.0)]],
        volume_cap: vec![4.0],
        weight_cap: vec![100.0],
        unit_volume: vec![1.0],
        unit_weight: vec![1.0],
        supply: vec![vec![10.0]],
        demand: vec![vec![10.0]],
        fleet: vec![5],
    }
}

/// A small feasible instance (at most 2 of each index) with fuzzy data and
/// integral supplies, demands and capacities.
pub fn random_instance(seed: u64) -> Instance {
    let mut g = rng(seed);
    let dims = Dimensions {
        m: g.gen_range(1..=2),
        n: g.gen_range(1..=2),
        k: g.gen_range(1..=2),
        l: g.gen_range(1..=2),
    };
    random_instance_shaped(seed, dims)
}

pub fn random_instance_shaped(seed: u64, dims: Dimensions) -> Instance {
    let mut g = rng(seed ^ 0x5eed);
    let Dimensions { m, n, k, l } = dims;
    let table = |g: &mut ChaCha8Rng, lo: f64, hi: f64| -> Vec<Vec<Vec<Trapezoid>>> {
        (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| (0..k).map(|_| random_trapezoid(g, lo, hi)).collect())
                    .collect()
            })
            .collect()
    };
    let cost = table(&mut g, 5.0, 30.0);
    let travel_time = table(&mut g, 1.0, 6.0);
    let handling_time = (0..l)
        .map(|_| (0..k).map(|_| random_trapezoid(&mut g, 1.0, 12.0)).collect())
        .collect();
    let unit_volume: Vec<f64> = (0..l).map(|_| g.gen_range(1..=3) as f64).collect();
    let unit_weight: Vec<f64> = (0..l).map(|_| g.gen_range(1..=3) as f64).collect();
    let volume_cap: Vec<f64> = (0..k).map(|_| g.gen_range(6..=15) as f64).collect();
    let weight_cap: Vec<f64> = (0..k).map(|_| g.gen_range(6..=15) as f64).collect();
    let demand: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..l).map(|_| g.gen_range(0..=6) as f64).collect())
        .collect();
    let mut supply: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..l).map(|_| g.gen_range(0..=6) as f64).collect())
        .collect();
    for p in 0..l {
        let need: f64 = demand.iter().map(|d| d[p]).sum();
        let have: f64 = supply.iter().map(|s| s[p]).sum();
        if have < need {
            supply[0][p] += need - have;
        }
    }
    // Enough trips for any split of the demand.
    let total_units: f64 = demand.iter().flatten().sum();
    let fleet = (0..k).map(|_| (total_units as u64).max(1) + 2).collect();
    Instance {
        dims,
        cost,
        travel_time,
        handling_time,
        volume_cap,
        weight_cap,
        unit_volume,
        unit_weight,
        supply,
        demand,
        fleet,
    }
}

/// Random MILP with `ni` bounded integer columns in `0..=3` followed by `nc`
/// continuous columns, all given finite upper bounds so every residual LP is
/// bounded.
pub fn random_milp(seed: u64, ni: usize, nc: usize) -> (LinearProgram<f64>, Vec<u32>) {
    let mut g = rng(seed);
    let nv = ni + nc;
    let objective = (0..nv).map(|_| round2(g.gen_range(-5.0..5.0))).collect();
    let mut lp = LinearProgram::new(objective);
    let mut int_bounds = Vec::with_capacity(ni);
    for j in 0..ni {
        let u = g.gen_range(1..=3u32);
        lp.set_integer(j, true).set_upper(j, Some(u as f64));
        int_bounds.push(u);
    }
    for j in ni..nv {
        lp.set_upper(j, Some(round2(g.gen_range(1.0..8.0))));
    }
    let rows = g.gen_range(1..=5);
    for _ in 0..rows {
        let coeffs: Vec<f64> = (0..nv)
            .map(|_| if g.gen_bool(0.6) { round2(g.gen_range(-4.0..4.0)) } else { 0.0 })
            .collect();
        let sense = match g.gen_range(0..10) {
            0..=5 => Sense::Le,
            6..=8 => Sense::Ge,
            _ => Sense::Eq,
        };
        let rhs = round2(g.gen_range(-3.0..9.0));
        lp.add_constraint(coeffs, sense, rhs);
    }
    (lp, int_bounds)
}

fn round2(v: f64) -> f64 {
    (v * 4.0).round() / 4.0
}
