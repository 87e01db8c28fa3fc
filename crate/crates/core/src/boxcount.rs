//! Exhaustive counts of squarefree values over origin-centred boxes.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euler::rational_to_f64;
use crate::local::Budget;
use crate::poly::{ModularPoly, Polynomial};
use crate::primes::primes_up_to;
use crate::squarefree::is_squarefree_int;

/// Box radii `(P1, …, Ps)`: the box is `|a_j| ≤ P_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxSpec {
    radii: Vec<u64>,
}

impl BoxSpec {
    pub fn new(radii: Vec<u64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidArgument(
                "box needs at least one radius".into(),
            ));
        }
        if radii.contains(&0) {
            return Err(Error::InvalidArgument("box radii must be positive".into()));
        }
        if radii.iter().any(|&r| r > i64::MAX as u64 / 2) {
            return Err(Error::InvalidArgument("box radius too large".into()));
        }
        Ok(BoxSpec { radii })
    }

    /// The cube `[-r, r]^arity`.
    pub fn cube(arity: usize, r: u64) -> Result<Self> {
        Self::new(vec![r; arity])
    }

    pub fn radii(&self) -> &[u64] {
        &self.radii
    }

    pub fn arity(&self) -> usize {
        self.radii.len()
    }

    /// `∏ (2 P_j + 1)`.
    pub fn lattice_points(&self) -> BigUint {
        self.radii
            .iter()
            .map(|&r| BigUint::from(2 * r + 1))
            .product()
    }

    /// `2^s ∏ P_j`, the volume of the box.
    pub fn normalizer(&self) -> BigUint {
        self.radii.iter().map(|&r| BigUint::from(2 * r)).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub box_spec: BoxSpec,
    /// Number of lattice points with a squarefree value.
    pub count: u64,
    /// Lattice points where the polynomial vanishes; never counted.
    pub zeros: u64,
    pub normalizer: BigUint,
    pub lattice_points: BigUint,
}

impl CountReport {
    /// `count / (2^s ∏ P_j)`. Can exceed 1 slightly for tiny boxes since
    /// the normalizer omits the centre row of each coordinate.
    pub fn density(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.count),
            BigInt::from(self.normalizer.clone()),
        )
    }

    pub fn density_f64(&self) -> f64 {
        rational_to_f64(&self.density())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub budget: Budget,
    /// Reject points whose residues mod `q²` (small primes `q`) are known
    /// to give a value divisible by `q²`, skipping the trial division.
    /// Results are identical with and without it.
    pub presieve: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: Budget::DEFAULT,
            presieve: false,
        }
    }
}

/// Tables of residue tuples `a mod q²` with `P(a) ≡ 0 (mod q²)`.
struct Presieve {
    tables: Vec<(u64, Vec<bool>)>,
}

/// Largest residue table built per prime.
const PRESIEVE_TABLE_LIMIT: u64 = 1 << 16;

impl Presieve {
    fn new(poly: &Polynomial) -> Result<Self> {
        let s = poly.arity() as u32;
        let mut tables = Vec::new();
        for q in primes_up_to(256) {
            let m = q * q;
            let Some(size) = m.checked_pow(s).filter(|&n| n <= PRESIEVE_TABLE_LIMIT) else {
                break;
            };
            let reduced = ModularPoly::new(poly, m)?;
            let mut table = vec![false; size as usize];
            let mut point = vec![0u64; s as usize];
            for (idx, slot) in table.iter_mut().enumerate() {
                let mut rest = idx as u64;
                for c in point.iter_mut() {
                    *c = rest % m;
                    rest /= m;
                }
                *slot = reduced.eval(&point) == 0;
            }
            if table.iter().any(|&b| b) {
                tables.push((m, table));
            }
        }
        Ok(Presieve { tables })
    }

    fn rejects(&self, point: &[i64]) -> bool {
        self.tables.iter().any(|(m, table)| {
            let m = *m as i64;
            let idx = point
                .iter()
                .rev()
                .fold(0i64, |acc, &a| acc * m + a.rem_euclid(m));
            table[idx as usize]
        })
    }
}

/// Counts lattice points of the box at which `poly` takes a squarefree
/// value.
pub fn count_squarefree_values(
    poly: &Polynomial,
    box_spec: &BoxSpec,
    options: CountOptions,
) -> Result<CountReport> {
    let s = poly.arity();
    if box_spec.arity() != s {
        return Err(Error::ArityMismatch {
            expected: s,
            got: box_spec.arity(),
        });
    }
    let lattice_points = box_spec.lattice_points();
    let needed = u128::try_from(&lattice_points).unwrap_or(u128::MAX);
    options.budget.check(needed)?;

    let presieve = if options.presieve {
        Some(Presieve::new(poly)?)
    } else {
        None
    };
    let radii: Vec<i64> = box_spec.radii.iter().map(|&r| r as i64).collect();

    let (count, zeros) = (-radii[0]..=radii[0])
        .into_par_iter()
        .map(|first| {
            let mut point: Vec<i64> = radii.iter().map(|&r| -r).collect();
            point[0] = first;
            let mut big: Vec<BigInt> = point.iter().map(|&a| BigInt::from(a)).collect();
            let (mut count, mut zeros) = (0u64, 0u64);
            loop {
                let value = poly.eval_unchecked(&big);
                if value.is_zero() {
                    zeros += 1;
                } else if !presieve.as_ref().is_some_and(|ps| ps.rejects(&point))
                    && is_squarefree_int(&value)
                {
                    count += 1;
                }
                let mut i = 1;
                loop {
                    if i == s {
                        return (count, zeros);
                    }
                    if point[i] < radii[i] {
                        point[i] += 1;
                        big[i] += 1;
                        break;
                    }
                    point[i] = -radii[i];
                    big[i] = BigInt::from(point[i]);
                    i += 1;
                }
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let report = CountReport {
        box_spec: box_spec.clone(),
        count,
        zeros,
        normalizer: box_spec.normalizer(),
        lattice_points,
    };
    if BigUint::from(count + zeros) > report.lattice_points {
        return Err(Error::Invariant("count exceeds lattice points".into()));
    }
    Ok(report)
}

/// One [`CountReport`] per box, in input order.
pub fn density_sweep(
    poly: &Polynomial,
    boxes: &[BoxSpec],
    options: CountOptions,
) -> Result<Vec<CountReport>> {
    boxes
        .iter()
        .map(|b| count_squarefree_values(poly, b, options))
        .collect()
}

/// Sweep table with columns `P1,…,Ps,N,normalizer,density,lattice_points,zeros_excluded`.
pub fn sweep_to_csv(reports: &[CountReport]) -> String {
    let arity = reports.first().map_or(1, |r| r.box_spec.arity());
    let mut out = String::new();
    for j in 1..=arity {
        write!(out, "P{j},").unwrap();
    }
    out.push_str("N,normalizer,density,lattice_points,zeros_excluded\n");
    for r in reports {
        for radius in r.box_spec.radii() {
            write!(out, "{radius},").unwrap();
        }
        writeln!(
            out,
            "{},{},{},{},{}",
            r.count,
            r.normalizer,
            r.density_f64(),
            r.lattice_points,
            r.zeros
        )
        .unwrap();
    }
    out
}

impl CountReport {
    pub fn is_empty(&self) -> bool {
        self.count.is_zero()
    }

    /// `count * min(P) / ∏ P`.
    pub fn min_radius_ratio(&self) -> f64 {
        let radii = self.box_spec.radii();
        let min = *radii.iter().min().unwrap() as f64;
        let prod: f64 = radii.iter().map(|&r| r as f64).product();
        self.count as f64 * min / prod
    }
}
