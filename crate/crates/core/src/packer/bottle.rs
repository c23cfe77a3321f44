use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed};
use serde::Serialize;

use super::{coverage, fmt_vec, HostKind, HostSpec, Packer, PackingPlan, Placement, Pool, Stage};
use crate::error::PackError;
use crate::invariants::Bottle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearBottleOptions {
    pub beta: Ratio<i64>,
    pub d: Ratio<i64>,
    /// `None` tries `D' = 0, |B*|, 2|B*|, ...` until the pipeline succeeds.
    pub d_prime: Option<i64>,
    pub check_hypotheses: bool,
}

impl Default for NearBottleOptions {
    fn default() -> Self {
        NearBottleOptions {
            beta: Ratio::new(1, 100),
            d: Ratio::new(1, 10),
            d_prime: None,
            check_hypotheses: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearBottleStats {
    pub d_prime: i64,
    pub divisibility_copies: usize,
    /// `a_i` of the large parts, as seen by the approach stage.
    pub approach_deviations: Vec<i64>,
    pub bottles_removed: usize,
    /// `ell^2 * sum a_i`.
    pub bottle_removal_bound: i64,
    pub deviation_copies: usize,
    pub residual_bottles: usize,
}

impl NearBottleStats {
    pub fn bounds_hold(&self, ell: usize, order: usize) -> bool {
        self.divisibility_copies + 2 <= ell.max(2)
            && self.bottles_removed as i64 <= self.bottle_removal_bound
            && self.deviation_copies as i64 == ell as i64 * self.d_prime / order as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproachOutcome {
    pub placements: Vec<Placement>,
    pub residual: HostSpec,
    pub deviations: Vec<i64>,
    pub bottles_removed: usize,
    pub removal_bound: i64,
    /// Whether every `a_i <= n / (ell^3 |B*|^2)`.
    pub within_stated_bound: bool,
    pub trace: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrimStats {
    pub deviations: Vec<i64>,
    pub deviation_copies: usize,
    pub residual_bottles: usize,
}

fn short(msg: String) -> PackError {
    PackError::Hypothesis(msg)
}

impl Packer {
    fn sized_bottle(&self) -> Result<Bottle, PackError> {
        let b = self.bottle()?;
        if b.z1 >= b.z {
            return Err(PackError::NoCriticalGap);
        }
        Ok(b)
    }

    fn multipartite_host<'a>(&self, host: &'a HostSpec) -> Result<&'a [usize], PackError> {
        if host.kind != HostKind::Multipartite || host.sizes.len() != self.ell() {
            return Err(PackError::BadHost(format!(
                "expected a complete {}-partite host, got {:?} with {} parts",
                self.ell(),
                host.kind,
                host.sizes.len()
            )));
        }
        Ok(&host.sizes)
    }

    /// `ell - 1` copies tiling one bottle: copy `t` puts the smallest class
    /// on the `z1`-part and class `i >= 1` on `z`-part `(i - 1 + t) mod (ell - 1)`.
    pub fn expand_bottle(&self) -> Result<Vec<Placement>, PackError> {
        let ell = self.bottle()?.ell;
        let map: Vec<usize> = (0..ell).collect();
        Ok(self.bottle_copies(&map, 1, Stage::ResidualBottles))
    }

    /// Expanded bottles with bottle part `b` placed on host part `map[b]`.
    fn bottle_copies(&self, map: &[usize], count: usize, stage: Stage) -> Vec<Placement> {
        let ell = self.ell();
        let sv = self.profile.sigma_vector().sizes().to_vec();
        let mut pool = Pool::default();
        for t in 0..ell - 1 {
            let assignment = (0..ell)
                .map(|c| if c == 0 { map[ell - 1] } else { map[(c - 1 + t) % (ell - 1)] })
                .collect();
            pool.add(&sv, assignment, count, stage);
        }
        pool.into_placements()
    }

    /// Bottle orientation with the `z1`-part on host part `small`.
    fn small_on(&self, small: usize) -> Vec<usize> {
        let ell = self.ell();
        let mut map: Vec<usize> = (0..ell).filter(|&p| p != small).collect();
        map.push(small);
        map
    }

    /// `(u_i - D') - z (n - ell D') / |B*|` (with `z1` for the last part).
    pub fn bottle_deviations(&self, sizes: &[usize], d_prime: i64) -> Result<Vec<i64>, PackError> {
        let b = self.bottle()?;
        let bs = b.order() as i64;
        let ell = self.ell() as i64;
        let n: i64 = sizes.iter().map(|&u| u as i64).sum();
        let rest = n - ell * d_prime;
        if rest % bs != 0 {
            return Err(PackError::Divisibility {
                what: "|G| - ell D'",
                value: rest,
                modulus: bs,
            });
        }
        let m = rest / bs;
        Ok(sizes
            .iter()
            .zip(&b.part_sizes)
            .map(|(&u, &share)| u as i64 - d_prime - share as i64 * m)
            .collect())
    }

    /// Removes bottles until the host is within `|B*|` of bottle shape
    /// (after setting aside `D'` vertices per part).
    pub fn approach_bottle(&self, host: &HostSpec, d_prime: i64) -> Result<ApproachOutcome, PackError> {
        let sizes = self.multipartite_host(host)?;
        let b = self.sized_bottle()?;
        let ell = self.ell();
        let bs = b.order() as i64;
        let (z, z1) = (b.z as i64, b.z1 as i64);
        if d_prime < 0 || d_prime % bs != 0 {
            return Err(PackError::Divisibility {
                what: "D'",
                value: d_prime,
                modulus: bs,
            });
        }
        let mut u: Vec<i64> = sizes.iter().map(|&s| s as i64 - d_prime).collect();
        if let Some(i) = u.iter().position(|&x| x < 0) {
            return Err(short(format!("part {i} is smaller than D' = {d_prime}")));
        }
        let n_total: i64 = sizes.iter().map(|&s| s as i64).sum();
        let n: i64 = u.iter().sum();
        if n % bs != 0 {
            return Err(PackError::Divisibility {
                what: "|G| - ell D'",
                value: n,
                modulus: bs,
            });
        }
        let k = n / bs;
        let a: Vec<i64> = u[..ell - 1].iter().map(|&x| z * k - x).collect();
        if let Some(i) = a.iter().position(|&x| x < 0) {
            return Err(short(format!(
                "a_{i} = {} < 0: part {i} exceeds its bottle share {}",
                a[i],
                z * k + d_prime
            )));
        }
        let limit = (ell.pow(3) as i64) * bs * bs;
        let within_stated_bound = a.iter().all(|&x| x * limit <= n_total);
        let removal_bound = (ell * ell) as i64 * a.iter().sum::<i64>();

        let mut pool = Pool::default();
        let mut removed = 0usize;
        let mut order: Vec<usize> = (0..ell - 1).collect();
        order.sort_by_key(|&i| (u[i], i));
        let top = *order.last().expect("ell >= 2");
        let mut r_steps = Vec::new();
        for &i in &order[..order.len() - 1] {
            let r = (u[top] - u[i]) / (z - z1);
            r_steps.push(r);
            if r == 0 {
                continue;
            }
            for (p, x) in u.iter_mut().enumerate() {
                *x -= r * if p == i { z1 } else { z };
            }
            pool.extend(self.bottle_copies(&self.small_on(i), r as usize, Stage::BottleAlign));
            removed += r as usize;
        }

        let xi = b.xi;
        let num = Ratio::from_integer(u[ell - 1]) - xi * u[top];
        let den = Ratio::from_integer((ell as i64 - 1) * z - (ell as i64 - 2) * z1) - xi * z1;
        let rounds = (num / den).floor().to_integer();
        if rounds < 0 {
            return Err(short(format!(
                "small part {} is below xi times the largest part {}",
                u[ell - 1] + d_prime,
                u[top] + d_prime
            )));
        }
        for i in 0..ell - 1 {
            pool.extend(self.bottle_copies(&self.small_on(i), rounds as usize, Stage::BottleRounds));
            u[i] -= rounds * (z1 + (ell as i64 - 2) * z);
        }
        u[ell - 1] -= rounds * (ell as i64 - 1) * z;
        removed += rounds as usize * (ell - 1);
        if let Some(i) = u.iter().position(|&x| x < 0) {
            return Err(short(format!("removing bottles exhausts part {i}")));
        }

        let residual: Vec<usize> = u.iter().map(|&x| (x + d_prime) as usize).collect();
        let placements = pool.into_placements();
        debug_assert_eq!(
            coverage(&placements, ell)
                .iter()
                .zip(sizes)
                .map(|(c, &s)| s as i64 - c)
                .collect::<Vec<_>>(),
            residual.iter().map(|&x| x as i64).collect::<Vec<_>>()
        );
        let dev = self.bottle_deviations(&residual, d_prime)?;
        if let Some(i) = dev.iter().position(|x| x.abs() > bs) {
            return Err(short(format!(
                "residual {} deviates from bottle shape by {} at part {i}",
                fmt_vec(&residual),
                dev[i]
            )));
        }
        let trace = format!(
            "approach: D'={d_prime}, a={}, r={}, {rounds} rounds, {removed} bottles removed, residual {}",
            fmt_vec(&a),
            fmt_vec(&r_steps),
            fmt_vec(&residual)
        );
        Ok(ApproachOutcome {
            placements,
            residual: HostSpec::multipartite(residual),
            deviations: a,
            bottles_removed: removed,
            removal_bound,
            within_stated_bound,
            trace,
        })
    }

    /// Packs a host within `|B*|` of bottle shape: a deviation block of
    /// parts `D' + a_i` by a shift packer, then exact bottles.
    pub fn trim_to_exact_bottle(&self, host: &HostSpec, d_prime: i64) -> Result<(PackingPlan, TrimStats), PackError> {
        if !self.profile.hcf_is_one {
            return Err(PackError::HcfNotOne);
        }
        let sizes = self.multipartite_host(host)?;
        let (placements, trace, stats) = self.trim_placements(sizes, d_prime)?;
        Ok((self.plan(host.clone(), placements, vec![trace]), stats))
    }

    fn trim_placements(&self, sizes: &[usize], d_prime: i64) -> Result<(Vec<Placement>, String, TrimStats), PackError> {
        let b = self.bottle()?;
        let bs = b.order() as i64;
        let ell = self.ell();
        if d_prime < 0 || d_prime % bs != 0 {
            return Err(PackError::Divisibility {
                what: "D'",
                value: d_prime,
                modulus: bs,
            });
        }
        let n: i64 = sizes.iter().map(|&s| s as i64).sum();
        if n % bs != 0 {
            return Err(PackError::Divisibility {
                what: "|G|",
                value: n,
                modulus: bs,
            });
        }
        let a = self.bottle_deviations(sizes, d_prime)?;
        if let Some(i) = a.iter().position(|x| x.abs() > bs) {
            return Err(short(format!(
                "part {i} deviates from bottle shape by {}, more than |B*| = {bs}",
                a[i]
            )));
        }
        let mut pool = Pool::default();
        if d_prime > 0 || a.iter().any(|&x| x != 0) {
            let (block, _) = if self.profile.hcf_chi.is_one() {
                self.balanced_fragment(d_prime, &a)?
            } else {
                self.bipartite_fragment(d_prime, a[0])?
            };
            pool.extend(block);
        }
        let deviation_copies: usize = pool.clone().into_placements().iter().map(|p| p.count).sum();
        debug_assert_eq!(deviation_copies as i64, ell as i64 * d_prime / self.order() as i64);
        let bottles = ((n - ell as i64 * d_prime) / bs) as usize;
        let identity: Vec<usize> = (0..ell).collect();
        pool.extend(self.bottle_copies(&identity, bottles, Stage::ResidualBottles));
        let trace = format!(
            "trim: D'={d_prime}, deviation block {}, {deviation_copies} copies, {bottles} residual bottles",
            fmt_vec(&a.iter().map(|x| x + d_prime).collect::<Vec<_>>())
        );
        Ok((
            pool.into_placements(),
            trace,
            TrimStats {
                deviations: a,
                deviation_copies,
                residual_bottles: bottles,
            },
        ))
    }

    /// Checks the near-bottle hypotheses in exact arithmetic. The lower
    /// bound `(1 - beta^(1/10)) |U_l| <= xi |U_i|` is tested in the form
    /// `(1 - xi |U_i| / |U_l|)^10 <= beta`.
    pub fn check_near_bottle(&self, sizes: &[usize], beta: Ratio<i64>, d: Ratio<i64>) -> Result<(), PackError> {
        let zero = Ratio::from_integer(0);
        if beta <= zero || beta >= Ratio::from_integer(1) || d <= zero {
            return Err(short(format!("need 0 < beta < 1 and d > 0, got beta = {beta}, d = {d}")));
        }
        let b = self.bottle()?;
        let ell = self.ell();
        let small = sizes[ell - 1];
        if small == 0 {
            return Err(short("the last part is empty".into()));
        }
        let big = |r: Ratio<i64>| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
        let int = |v: usize| BigRational::from_integer(BigInt::from(v));
        let (beta, d, xi) = (big(beta), big(d), big(b.xi));
        let ceiling = (BigRational::one() - &beta) * int(small);
        for (i, &u) in sizes[..ell - 1].iter().enumerate() {
            let scaled = &xi * int(u);
            if scaled > ceiling {
                return Err(short(format!(
                    "xi |U_{i}| = {scaled} exceeds (1 - beta) |U_last| = {ceiling}"
                )));
            }
            let gap = BigRational::one() - &scaled / int(small);
            if gap.is_positive() && num_traits::pow(gap, 10) > beta {
                return Err(short(format!(
                    "xi |U_{i}| = {scaled} is below (1 - beta^(1/10)) |U_last|"
                )));
            }
        }
        let allowed = d * int(sizes.iter().sum());
        for i in 0..ell - 1 {
            for j in i + 1..ell - 1 {
                let spread = sizes[i].abs_diff(sizes[j]);
                if int(spread) > allowed {
                    return Err(short(format!(
                        "| |U_{i}| - |U_{j}| | = {spread} exceeds d |F| = {allowed}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full pipeline for a complete `ell`-partite host whose last part is
    /// the small one: divisibility copies, approach, trim.
    pub fn pack_near_bottle(
        &self,
        host: &HostSpec,
        opts: &NearBottleOptions,
    ) -> Result<(PackingPlan, NearBottleStats), PackError> {
        if !self.profile.hcf_is_one {
            return Err(PackError::HcfNotOne);
        }
        let sizes = self.multipartite_host(host)?;
        let b = self.sized_bottle()?;
        let ell = self.ell();
        let h = self.order();
        let n: usize = sizes.iter().sum();
        if !n.is_multiple_of(h) {
            return Err(PackError::Divisibility {
                what: "|F|",
                value: n as i64,
                modulus: h as i64,
            });
        }
        if opts.check_hypotheses {
            self.check_near_bottle(sizes, opts.beta, opts.d).map_err(|e| e.at("hypotheses"))?;
        }

        let t = (n / h) % (ell - 1);
        let sv = self.profile.sigma_vector().sizes().to_vec();
        let mut first = Pool::default();
        for s in 0..t {
            let assignment = (0..ell)
                .map(|c| if c == 0 { ell - 1 } else { (c - 1 + s) % (ell - 1) })
                .collect();
            first.add(&sv, assignment, 1, Stage::Divisibility);
        }
        let taken = first.coverage(ell);
        let mut rest = Vec::with_capacity(ell);
        for (i, (&u, &c)) in sizes.iter().zip(&taken).enumerate() {
            let left = u as i64 - c;
            if left < 0 {
                return Err(short(format!("part {i} is too small for the divisibility copies")).at("divisibility"));
            }
            rest.push(left as usize);
        }
        let rest = HostSpec::multipartite(rest);

        let bs = b.order() as i64;
        let candidates: Vec<i64> = match opts.d_prime {
            Some(d) => vec![d],
            None => (0..).map(|m| m * bs).take_while(|&d| d * ell as i64 <= n as i64).collect(),
        };
        let mut last_err = None;
        for d_prime in candidates {
            let approach = match self.approach_bottle(&rest, d_prime) {
                Ok(a) => a,
                Err(e) => {
                    // a_i only shrinks as D' grows, so later candidates fail too.
                    if last_err.is_none() {
                        last_err = Some(e.at("approach"));
                    }
                    break;
                }
            };
            let (trimmed, trim_trace, trim) = match self.trim_placements(&approach.residual.sizes, d_prime) {
                Ok(x) => x,
                Err(e) => {
                    last_err = Some(e.at("trim"));
                    continue;
                }
            };
            let mut pool = first.clone();
            pool.extend(approach.placements.clone());
            pool.extend(trimmed);
            let stats = NearBottleStats {
                d_prime,
                divisibility_copies: t,
                approach_deviations: approach.deviations.clone(),
                bottles_removed: approach.bottles_removed,
                bottle_removal_bound: approach.removal_bound,
                deviation_copies: trim.deviation_copies,
                residual_bottles: trim.residual_bottles,
            };
            debug_assert!(stats.bounds_hold(ell, h));
            let trace = vec![
                format!("divisibility: {t} copies"),
                approach.trace.clone(),
                trim_trace,
            ];
            return Ok((self.plan(host.clone(), pool.into_placements(), trace), stats));
        }
        Err(last_err.unwrap_or_else(|| short("no admissible D'".into()).at("trim")))
    }
}
