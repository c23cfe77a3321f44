use num_integer::Integer;
use serde::Serialize;

use super::{fmt_vec, HostSpec, Packer, PackingPlan, Placement, Pool, Stage};
use crate::arith::{bezout, Hcf};
use crate::error::PackError;
use crate::invariants::ColoringSizeVector;

/// Integers `b[j][r]` with `sum b[j][r] d[j][r] = gcd`, where `d[j]` are the
/// consecutive differences of the `j`-th size vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftSolution {
    pub differences: Vec<Vec<i64>>,
    pub coefficients: Vec<Vec<i64>>,
    pub gcd: i64,
}

impl ShiftSolution {
    pub fn new(vectors: &[ColoringSizeVector]) -> Self {
        let differences: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| v.diffs().into_iter().map(|d| d as i64).collect())
            .collect();
        let (gcd, flat) = bezout(&differences.concat());
        let mut it = flat.into_iter();
        let coefficients = differences
            .iter()
            .map(|d| it.by_ref().take(d.len()).collect())
            .collect();
        ShiftSolution {
            differences,
            coefficients,
            gcd,
        }
    }

    pub fn value(&self) -> i64 {
        self.differences
            .iter()
            .flatten()
            .zip(self.coefficients.iter().flatten())
            .map(|(d, b)| d * b)
            .sum()
    }

    /// The identity holds and no coefficient sits on a zero difference.
    pub fn holds(&self) -> bool {
        let zeros_clean = self
            .differences
            .iter()
            .flatten()
            .zip(self.coefficients.iter().flatten())
            .all(|(&d, &b)| d != 0 || b == 0);
        zeros_clean && self.value() == self.gcd
    }

    pub fn max_coefficient(&self) -> i64 {
        self.coefficients.iter().flatten().map(|b| b.abs()).max().unwrap_or(0)
    }
}

/// Integers `b[j]` with `sum b[j] |C_j| = 1` over the components of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueSplitSolution {
    pub orders: Vec<i64>,
    pub coefficients: Vec<i64>,
}

impl CliqueSplitSolution {
    pub fn new(orders: &[usize]) -> Self {
        let orders: Vec<i64> = orders.iter().map(|&o| o as i64).collect();
        let (_, coefficients) = bezout(&orders);
        CliqueSplitSolution { orders, coefficients }
    }

    pub fn value(&self) -> i64 {
        self.orders.iter().zip(&self.coefficients).map(|(o, b)| o * b).sum()
    }

    pub fn holds(&self) -> bool {
        self.value() == 1
    }
}

pub(crate) enum SimFailure {
    Short(String),
    Parity,
}

type Fragment = (Vec<Placement>, Vec<String>);

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Smallest `start + m * step` (`m >= 1`) accepted by `feasible`, trying a
/// bounded number of candidates before settling for `fallback`.
fn smallest_feasible(start: i64, step: i64, fallback: i64, feasible: impl Fn(i64) -> bool) -> i64 {
    (1..=256)
        .map(|m| start + m * step)
        .take_while(|&d| d < fallback)
        .find(|&d| feasible(d))
        .unwrap_or(fallback)
}

fn round_up(x: i64, m: i64) -> i64 {
    Integer::div_ceil(&x, &m) * m
}

impl Packer {
    pub fn shift_solution(&self) -> ShiftSolution {
        ShiftSolution::new(self.vectors())
    }

    pub fn clique_split_solution(&self) -> CliqueSplitSolution {
        CliqueSplitSolution::new(&self.profile.component_orders)
    }

    fn check_block(&self, d_prime: i64, deviations: &[i64]) -> Result<(), PackError> {
        let h = self.order() as i64;
        if d_prime < 0 || d_prime % h != 0 {
            return Err(PackError::Divisibility {
                what: "D'",
                value: d_prime,
                modulus: h,
            });
        }
        let bound = self.bottle()?.order() as i64;
        if let Some(&a) = deviations.iter().find(|a| a.abs() > bound) {
            return Err(PackError::DeviationTooLarge { deviation: a, bound });
        }
        Ok(())
    }

    /// Plan for the complete `ell`-partite host with parts `D' + a_i`.
    pub fn pack_balanced_shift(&self, d_prime: i64, deviations: &[i64]) -> Result<PackingPlan, PackError> {
        if !self.profile.hcf_chi.is_one() {
            return Err(PackError::WrongHcfChi(self.profile.hcf_chi, 1));
        }
        if deviations.len() != self.ell() || deviations.iter().sum::<i64>() != 0 {
            return Err(PackError::BadHost(format!(
                "deviations {} must have {} entries summing to 0",
                fmt_vec(deviations),
                self.ell()
            )));
        }
        self.check_block(d_prime, deviations)?;
        let (placements, trace) = self.balanced_fragment(d_prime, deviations)?;
        let host = HostSpec::multipartite(deviations.iter().map(|a| (d_prime + a) as usize).collect());
        Ok(self.plan(host, placements, trace))
    }

    pub(crate) fn balanced_fragment(&self, d_prime: i64, deviations: &[i64]) -> Result<Fragment, PackError> {
        self.simulate_balanced(d_prime, deviations).map_err(|f| {
            let h = self.order() as i64;
            let ell = self.ell();
            let q = self.vectors().len() as i64;
            let transfers: i64 = deviations.iter().filter(|&&a| a > 0).sum();
            let per_pair = factorial(ell.saturating_sub(2));
            let k = Integer::div_ceil(&(self.shift_solution().max_coefficient() * transfers), &per_pair).max(1);
            let bound = round_up(
                (k * q * factorial(ell - 1) * h).max(deviations.iter().map(|a| a.abs()).max().unwrap_or(0)),
                h,
            );
            let suggested = smallest_feasible(d_prime, h, bound, |d| self.simulate_balanced(d, deviations).is_ok());
            infeasible(d_prime, f, suggested)
        })
    }

    fn simulate_balanced(&self, d_prime: i64, deviations: &[i64]) -> Result<Fragment, SimFailure> {
        let ell = self.ell();
        let h = self.order() as i64;
        let q = self.vectors().len() as i64;
        let cycle = q * factorial(ell - 1);
        let units = d_prime / h;
        let (k, t) = (units / cycle, units % cycle);
        let target: Vec<i64> = deviations.iter().map(|a| d_prime + a).collect();
        if target.iter().any(|&u| u < 0) {
            return Err(SimFailure::Short(format!("part sizes {} are negative", fmt_vec(&target))));
        }

        let mut pool = Pool::default();
        let sv = self.profile.sigma_vector().sizes().to_vec();
        for s in 0..ell {
            pool.add(&sv, (0..ell).map(|c| (c + s) % ell).collect(), t as usize, Stage::BalanceSteps);
        }
        if k > 0 {
            for v in self.vectors() {
                for perm in permutations(ell) {
                    pool.add(v.sizes(), perm, k as usize, Stage::Base);
                }
            }
        }

        let sol = self.shift_solution();
        debug_assert!(sol.holds() && sol.gcd == 1);
        let mut transfers = 0;
        loop {
            let cov = pool.coverage(ell);
            let need: Vec<i64> = target.iter().zip(&cov).map(|(t, c)| t - c).collect();
            let i1 = argmax(&need);
            if need[i1] <= 0 {
                break;
            }
            let i2 = argmax(&need.iter().map(|x| -x).collect::<Vec<_>>());
            for (j, v) in self.vectors().iter().enumerate() {
                for (r, &b) in sol.coefficients[j].iter().enumerate() {
                    let (src, dst) = if b > 0 { (i1, i2) } else { (i2, i1) };
                    for _ in 0..b.abs() {
                        let copy = pool
                            .take(|p| p.sizes == v.0 && p.assignment[r] == src && p.assignment[r + 1] == dst)
                            .ok_or_else(|| {
                                SimFailure::Short(format!(
                                    "no spare copy of {v} with classes {r},{} in parts {src},{dst}",
                                    r + 1
                                ))
                            })?;
                        let mut assignment = copy.assignment;
                        assignment.swap(r, r + 1);
                        pool.add(&copy.sizes, assignment, 1, Stage::Shift);
                    }
                }
            }
            transfers += 1;
        }
        let trace = vec![format!(
            "balanced shift: D'={d_prime}, deviations {}, {} rotated steps, k={k}, {transfers} unit transfers",
            fmt_vec(deviations),
            t
        )];
        Ok((pool.into_placements(), trace))
    }

    fn require_bipartite_shift(&self) -> Result<(), PackError> {
        if self.ell() != 2 {
            return Err(PackError::NotBipartite(self.ell()));
        }
        if self.profile.hcf_c != 1 {
            return Err(PackError::ComponentHcf(self.profile.hcf_c));
        }
        if self.profile.hcf_chi != Hcf::Finite(2) {
            return Err(PackError::WrongHcfChi(self.profile.hcf_chi, 2));
        }
        Ok(())
    }

    /// Plan for the complete bipartite host with parts `(D' + a, D' - a)`.
    pub fn pack_bipartite_shift(&self, d_prime: i64, a: i64) -> Result<PackingPlan, PackError> {
        self.require_bipartite_shift()?;
        self.check_block(d_prime, &[a])?;
        let (placements, trace) = self.bipartite_fragment(d_prime, a)?;
        let host = HostSpec::multipartite(vec![(d_prime + a) as usize, (d_prime - a) as usize]);
        Ok(self.plan(host, placements, trace))
    }

    pub(crate) fn bipartite_fragment(&self, d_prime: i64, a: i64) -> Result<Fragment, PackError> {
        self.simulate_bipartite(d_prime, a).map_err(|f| {
            let h = self.order() as i64;
            let sol = self.shift_solution();
            let spread: i64 = sol.coefficients.iter().flatten().map(|b| b.abs()).sum();
            let bound = round_up(a.abs() * (1 + spread * h) + h * h, h);
            let suggested = smallest_feasible(d_prime, h, bound, |d| self.simulate_bipartite(d, a).is_ok());
            infeasible(d_prime, f, suggested)
        })
    }

    fn simulate_bipartite(&self, d_prime: i64, a: i64) -> Result<Fragment, SimFailure> {
        let h = self.order() as i64;
        // Work with U1 the larger side; `orient(true)` puts class 0 in U1.
        let (p1, p2) = if a >= 0 { (0, 1) } else { (1, 0) };
        let orient = |small_in_u1: bool| if small_in_u1 { vec![p1, p2] } else { vec![p2, p1] };
        let m = a.abs();
        let mut u = [d_prime + m, d_prime - m];
        let short = |u: &[i64; 2], what: &str| {
            if u[0] < 0 || u[1] < 0 {
                Err(SimFailure::Short(format!("sides go negative ({}, {}) {what}", u[0], u[1])))
            } else {
                Ok(())
            }
        };
        short(&u, "before equalising")?;

        let mut pool = Pool::default();
        let sol = self.shift_solution();
        debug_assert!(sol.holds() && sol.gcd == 2);
        for (j, v) in self.vectors().iter().enumerate() {
            let b = sol.coefficients[j][0];
            if b == 0 {
                continue;
            }
            let count = m * b.abs();
            let (x1, x2) = (v.0[0] as i64, v.0[1] as i64);
            if b > 0 {
                pool.add(v.sizes(), orient(false), count as usize, Stage::Equalize);
                u[0] -= count * x2;
                u[1] -= count * x1;
            } else {
                pool.add(v.sizes(), orient(true), count as usize, Stage::Equalize);
                u[0] -= count * x1;
                u[1] -= count * x2;
            }
        }
        short(&u, "after equalising")?;
        if u[0] != u[1] {
            return Err(SimFailure::Parity);
        }
        let equalized = u[0];

        let mut parity = (0, 0);
        if u[0] % h != 0 {
            if h % 2 != 0 || u[0] % (h / 2) != 0 {
                return Err(SimFailure::Parity);
            }
            let odd = self.vectors().iter().find(|v| v.0.iter().all(|x| x % 2 == 1));
            let even = self.vectors().iter().find(|v| v.0.iter().all(|x| x % 2 == 0));
            let (Some(c1), Some(c2)) = (odd, even) else {
                return Err(SimFailure::Parity);
            };
            let k1 = h / 2 - c2.0[0] as i64;
            let k2 = h / 2 - c1.0[0] as i64;
            pool.add(c1.sizes(), orient(true), k1 as usize, Stage::Parity);
            u[0] -= k1 * c1.0[0] as i64;
            u[1] -= k1 * c1.0[1] as i64;
            pool.add(c2.sizes(), orient(false), k2 as usize, Stage::Parity);
            u[0] -= k2 * c2.0[1] as i64;
            u[1] -= k2 * c2.0[0] as i64;
            short(&u, "after the parity fix")?;
            if u[0] != u[1] || u[0] % h != 0 {
                return Err(SimFailure::Parity);
            }
            parity = (k1, k2);
        }

        let pairs = (u[0] / h) as usize;
        let sv = self.profile.sigma_vector().sizes().to_vec();
        pool.add(&sv, orient(true), pairs, Stage::Mirrored);
        pool.add(&sv, orient(false), pairs, Stage::Mirrored);
        let trace = vec![format!(
            "bipartite shift: D'={d_prime}, a={a}, equalised sides {equalized}, parity copies {}+{}, {pairs} mirrored pairs",
            parity.0, parity.1
        )];
        Ok((pool.into_placements(), trace))
    }

    /// Plan for two disjoint cliques of orders `D' + a` and `D' - a`.
    pub fn pack_two_cliques(&self, d_prime: i64, a: i64) -> Result<PackingPlan, PackError> {
        if self.ell() > 2 {
            return Err(PackError::NotBipartite(self.ell()));
        }
        if self.profile.hcf_c != 1 {
            return Err(PackError::ComponentHcf(self.profile.hcf_c));
        }
        self.check_block(d_prime, &[a])?;
        let (placements, trace) = self.simulate_cliques(d_prime, a).map_err(|f| {
            let h = self.order() as i64;
            let spread: i64 = self.clique_split_solution().coefficients.iter().map(|b| b.abs()).sum();
            let bound = round_up(a.abs() * (1 + spread * h), h);
            let suggested = smallest_feasible(d_prime, h, bound, |d| self.simulate_cliques(d, a).is_ok());
            infeasible(d_prime, f, suggested)
        })?;
        let host = HostSpec::two_cliques((d_prime + a) as usize, (d_prime - a) as usize);
        Ok(self.plan(host, placements, trace))
    }

    fn simulate_cliques(&self, d_prime: i64, a: i64) -> Result<Fragment, SimFailure> {
        let h = self.order() as i64;
        let orders = &self.profile.component_orders;
        let (p1, p2) = if a >= 0 { (0, 1) } else { (1, 0) };
        let m = a.abs();
        let mut u = [0i64; 2];
        u[p1] = d_prime + m;
        u[p2] = d_prime - m;
        let sol = self.clique_split_solution();
        debug_assert!(sol.holds());
        let mut pool = Pool::default();
        for (j, &b) in sol.coefficients.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let (home, rest) = if b > 0 { (p1, p2) } else { (p2, p1) };
            let mut assignment = vec![rest; orders.len()];
            assignment[j] = home;
            let count = m * b.abs();
            pool.add(orders, assignment, count as usize, Stage::Split);
            u[home] -= count * orders[j] as i64;
            u[rest] -= count * (h - orders[j] as i64);
        }
        if u.iter().any(|&x| x < 0) {
            return Err(SimFailure::Short(format!(
                "clique remainders ({}, {}) are negative",
                u[0], u[1]
            )));
        }
        if u.iter().any(|&x| x % h != 0) {
            return Err(SimFailure::Parity);
        }
        for (p, &rem) in u.iter().enumerate() {
            pool.add(orders, vec![p; orders.len()], (rem / h) as usize, Stage::Whole);
        }
        let trace = vec![format!(
            "two cliques: D'={d_prime}, a={a}, coefficients {}, remainders ({}, {})",
            fmt_vec(&sol.coefficients),
            u[0],
            u[1]
        )];
        Ok((pool.into_placements(), trace))
    }
}

fn argmax(v: &[i64]) -> usize {
    let best = *v.iter().max().expect("non-empty");
    v.iter().position(|&x| x == best).expect("max exists")
}

fn infeasible(d_prime: i64, f: SimFailure, suggested: i64) -> PackError {
    match f {
        SimFailure::Short(reason) => PackError::Infeasible {
            d_prime,
            reason,
            suggested,
        },
        SimFailure::Parity => PackError::ParityContradiction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn smallest_feasible_search() {
        assert_eq!(smallest_feasible(0, 5, 100, |d| d >= 15), 15);
        assert_eq!(smallest_feasible(0, 5, 12, |_| false), 12);
    }
}
