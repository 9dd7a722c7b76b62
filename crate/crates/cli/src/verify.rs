//! The verification suite: named checks comparing computed values with known ones.

use std::time::Instant;

use clap::ValueEnum;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use topcoh::complexes::{build, BuildOptions, Family};
use topcoh::formulas::{compare_bounds, gaussian_binomial, modular_genus, steinberg_rank, t_sequence};
use topcoh::gfq::{count_avoiding_line, enumerate_subspaces, PrimeField};
use topcoh::homology::{acyclicity_check, betti, coinvariants_rank, kernel_report, surface_check, HomologyOptions};
use topcoh::lifting::{det_integer, lift_sl, random_sl, reduce};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature (a published table or theorem).
    Published,
    /// Derived by hand or by an independent formula.
    Derived,
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationOutcome {
    pub id: String,
    pub status: Status,
    pub observed: String,
    pub expected: String,
    pub provenance: Provenance,
    pub duration_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Why a probe produced no value.
#[derive(Debug)]
pub enum ProbeError {
    /// A resource cap was hit; the check is skipped rather than failed.
    Skip(String),
    Error(String),
}

impl From<topcoh::Error> for ProbeError {
    fn from(e: topcoh::Error) -> Self {
        match e {
            topcoh::Error::TooLarge { .. } => ProbeError::Skip(e.to_string()),
            other => ProbeError::Error(other.to_string()),
        }
    }
}

type ProbeResult = Result<String, ProbeError>;
type Probe = Box<dyn Fn(&HomologyOptions) -> ProbeResult + Send + Sync>;

pub struct Check {
    pub id: String,
    pub level: Level,
    pub provenance: Provenance,
    pub expected: String,
    probe: Probe,
}

impl Check {
    fn new(
        id: impl Into<String>,
        level: Level,
        provenance: Provenance,
        expected: impl ToString,
        probe: impl Fn(&HomologyOptions) -> ProbeResult + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            level,
            provenance,
            expected: expected.to_string(),
            probe: Box::new(probe),
        }
    }

    pub fn run(&self, opts: &HomologyOptions) -> VerificationOutcome {
        let start = Instant::now();
        let result = (self.probe)(opts);
        let duration_ms = start.elapsed().as_secs_f64() * 1e3;
        let (status, observed, reason) = match result {
            Ok(obs) if obs == self.expected => (Status::Pass, obs, None),
            Ok(obs) => (Status::Fail, obs, Some("observed value differs from expected".into())),
            Err(ProbeError::Skip(why)) => (Status::Skipped, String::from("skipped"), Some(why)),
            Err(ProbeError::Error(why)) => (Status::Fail, String::from("error"), Some(why)),
        };
        VerificationOutcome {
            id: self.id.clone(),
            status,
            observed,
            expected: self.expected.clone(),
            provenance: self.provenance,
            duration_ms,
            reason,
        }
    }
}

fn err(e: topcoh::Error) -> ProbeError {
    e.into()
}

const TABLE_1: [&str; 15] = [
    "1",
    "11",
    "621",
    "176331",
    "250654141",
    "1781972405051",
    "63346001119010061",
    "11259312615761079960171",
    "10006344346503001479394156381",
    "44464067922769996760030750509009691",
    "987899991107026778582667588995859270541101",
    "109745515200463561297438405787408294210000904481611",
    "60957982865169441101378571385234702783255341037103258372221",
    "169295103797089744818524470008237065225058191012577153712309414663931",
    "2350867829470159774034814041007591566603522538519291648712545382850352884817741",
];

fn t_value(p: u64, n: usize) -> Result<BigUint, ProbeError> {
    if p == 2 {
        return Ok(steinberg_rank(2, n as u64));
    }
    Ok(t_sequence(p, n.max(1)).map_err(err)?.values[n].clone())
}

fn top_reduced_betti(family: Family, n: usize, p: u64, opts: &HomologyOptions) -> ProbeResult {
    let k = build(family, n, 0, p, &BuildOptions::default()).map_err(err)?;
    let r = betti(&k, true, opts).map_err(err)?;
    let lower: Vec<String> = r.betti[..r.betti.len().saturating_sub(1)].iter().map(u64::to_string).collect();
    Ok(format!("lower [{}] top {}", lower.join(" "), r.top_betti()))
}

fn formula_checks() -> Vec<Check> {
    use Level::Quick;
    let mut out = vec![Check::new("formula.table1.p5", Quick, Provenance::Published, TABLE_1.join(","), |_| {
        let t = t_sequence(5, 15).map_err(err)?;
        Ok(t.values[1..].iter().map(BigUint::to_string).collect::<Vec<_>>().join(","))
    })];
    for p in [3u64, 5, 7, 11] {
        out.push(Check::new(
            format!("formula.t200.p{p}"),
            Quick,
            Provenance::Trivial,
            "201 values in under 60 s",
            move |_| {
                let start = Instant::now();
                let t = t_sequence(p, 200).map_err(err)?;
                let secs = start.elapsed().as_secs_f64();
                Ok(if secs < 60.0 {
                    format!("{} values in under 60 s", t.values.len())
                } else {
                    format!("{} values in {secs:.1} s", t.values.len())
                })
            },
        ));
    }
    out.push(Check::new(
        "formula.t.p3-is-steinberg",
        Quick,
        Provenance::Derived,
        "3^C(n,2) for n <= 30",
        |_| {
            let t = t_sequence(3, 30).map_err(err)?;
            Ok(match (0..=30).find(|&n| t.values[n] != steinberg_rank(3, n as u64)) {
                None => "3^C(n,2) for n <= 30".into(),
                Some(n) => format!("differs at n = {n}"),
            })
        },
    ));
    for p in [5u64, 7, 11, 13] {
        out.push(Check::new(
            format!("formula.dominance.p{p}"),
            Quick,
            Provenance::Published,
            "t_n > t'_n for 2 <= n <= 30",
            move |_| {
                compare_bounds(p, 30).map_err(err)?;
                Ok("t_n > t'_n for 2 <= n <= 30".into())
            },
        ));
    }
    for (p, g) in [(7u64, 3u64), (11, 26), (13, 50)] {
        out.push(Check::new(format!("formula.genus.p{p}"), Quick, Provenance::Derived, g, move |_| {
            Ok(modular_genus(p).map_err(err)?.to_string())
        }));
    }
    out.push(Check::new(
        "counting.avoiding-line",
        Quick,
        Provenance::Published,
        "p^k [n-1 choose k]_p for n <= 4, p <= 5",
        |_| {
            for p in [2u64, 3, 5] {
                let f = PrimeField::new(p).map_err(err)?;
                for n in 2..=4usize {
                    for line in enumerate_subspaces(&f, n, 1).map_err(err)? {
                        for k in 1..n {
                            let got = count_avoiding_line(&f, n, k, &line).map_err(err)?;
                            let want = BigUint::from(p).pow(k as u32)
                                * gaussian_binomial(n as u64 - 1, k as u64, p).map_err(err)?;
                            if got != want {
                                return Ok(format!("p={p} n={n} k={k}: {got}"));
                            }
                        }
                    }
                }
            }
            Ok("p^k [n-1 choose k]_p for n <= 4, p <= 5".into())
        },
    ));
    out.push(Check::new(
        "counting.q-pascal",
        Quick,
        Provenance::Derived,
        "q-Pascal and symmetry for n <= 40",
        |_| {
            for q in [2u64, 3, 5, 7] {
                for n in 1..=40u64 {
                    for k in 1..n {
                        let g = gaussian_binomial(n, k, q).map_err(err)?;
                        let pascal = gaussian_binomial(n - 1, k - 1, q).map_err(err)?
                            + BigUint::from(q).pow(k as u32) * gaussian_binomial(n - 1, k, q).map_err(err)?;
                        if g != pascal || g != gaussian_binomial(n, n - k, q).map_err(err)? {
                            return Ok(format!("fails at q={q} n={n} k={k}"));
                        }
                    }
                }
            }
            Ok("q-Pascal and symmetry for n <= 40".into())
        },
    ));
    out
}

fn level_for(p: u64) -> Level {
    if p <= 5 {
        Level::Quick
    } else {
        Level::Full
    }
}

fn homology_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (n, p) in [(2usize, 2u64), (2, 3), (2, 5), (2, 7), (3, 2), (3, 3)] {
        let want = format!("lower [{}] top {}", vec!["0"; n - 1].join(" "), steinberg_rank(p, n as u64));
        out.push(Check::new(format!("homology.tits.n{n}.p{p}"), level_for(p), Provenance::Published, want, move |o| {
            top_reduced_betti(Family::Tits, n, p, o)
        }));
    }
    for (n, p) in [(2usize, 3u64), (2, 5), (2, 7), (2, 11), (3, 2), (3, 3), (3, 5), (3, 7)] {
        let t = t_value(p, n).unwrap_or_default();
        let want = format!("lower [{}] top {t}", vec!["0"; n - 1].join(" "));
        out.push(Check::new(
            format!("homology.tits-oriented.n{n}.p{p}"),
            level_for(p),
            Provenance::Published,
            want,
            move |o| top_reduced_betti(Family::TitsOriented, n, p, o),
        ));
    }
    for (p, g) in [(3u64, 0u64), (5, 0), (7, 3), (11, 26)] {
        out.push(Check::new(format!("homology.surface.p{p}"), level_for(p), Provenance::Published, g, move |_| {
            let k = build(Family::BdaPm, 2, 0, p, &BuildOptions::default()).map_err(err)?;
            Ok(surface_check(&k).map_err(err)?.genus.to_string())
        }));
    }
    out.push(Check::new("homology.bda-pm.n2.p2-triangle", Level::Quick, Provenance::Published, "counts [3, 3, 1] acyclic", |o| {
        let k = build(Family::BdaPm, 2, 0, 2, &BuildOptions::default()).map_err(err)?;
        let r = acyclicity_check(&k, 2, o).map_err(err)?;
        Ok(format!("counts {:?} {}", k.stats().counts, if r.pass { "acyclic" } else { "not acyclic" }))
    }));
    for p in [3u64, 5, 7, 11] {
        let want = t_value(p, 2).map(|t| t + modular_genus(p).unwrap_or_default() * 2u32).unwrap_or_default();
        out.push(Check::new(format!("homology.coinvariants.n2.p{p}"), level_for(p), Provenance::Published, want, move |o| {
            Ok(coinvariants_rank(2, p, &BuildOptions::default(), o).map_err(err)?.coinv_rank.to_string())
        }));
    }
    for (p, want, level) in [(3u64, 27u64, Level::Quick), (5, 621, Level::Full)] {
        out.push(Check::new(format!("homology.coinvariants.n3.p{p}"), level, Provenance::Published, want, move |o| {
            Ok(coinvariants_rank(3, p, &BuildOptions::default(), o).map_err(err)?.coinv_rank.to_string())
        }));
    }
    for (p, want) in [(5u64, "kernel 0 predicted 0"), (7, "kernel 6 predicted 6")] {
        out.push(Check::new(format!("homology.kernel.n2.p{p}"), level_for(p), Provenance::Published, want, move |o| {
            let k = kernel_report(2, p, &BuildOptions::default(), o).map_err(err)?;
            Ok(format!("kernel {} predicted {}", k.kernel_rank, k.predicted_kernel_lower_bound))
        }));
    }
    for p in [2u64, 3, 5, 7] {
        for n in 1..=3usize {
            for m in 0..=3 - n {
                for family in [Family::BPm, Family::BdPm] {
                    out.push(acyclic(family, n, m, p, n as i64 - 2));
                }
            }
        }
    }
    for n in 1..=3usize {
        out.push(acyclic(Family::BdaPm, n, 0, 7, n as i64 - 2));
        for p in [2u64, 3, 5] {
            out.push(acyclic(Family::BdaPm, n, 0, p, n as i64 - 1));
        }
    }
    out.push(Check::new("homology.acyclic.bda-pm.n2.m0.p7.fails", Level::Full, Provenance::Published, "b1 = 6", |o| {
        let k = build(Family::BdaPm, 2, 0, 7, &BuildOptions::default()).map_err(err)?;
        let r = acyclicity_check(&k, 1, o).map_err(err)?;
        Ok(format!("b1 = {}", r.homology.betti_at(1).unwrap_or(0)))
    }));
    out
}

fn acyclic(family: Family, n: usize, m: usize, p: u64, through: i64) -> Check {
    Check::new(
        format!("homology.acyclic.{family}.n{n}.m{m}.p{p}.d{through}"),
        level_for(p),
        Provenance::Published,
        "acyclic",
        move |o| {
            let k = build(family, n, m, p, &BuildOptions::skeleton((through + 1).max(0) as usize)).map_err(err)?;
            let r = acyclicity_check(&k, through, o).map_err(err)?;
            Ok(match (r.pass, r.rank_only) {
                (true, false) => "acyclic".into(),
                (true, true) => "acyclic (rank only)".into(),
                (false, _) => format!("failures {:?}", r.failures),
            })
        },
    )
}

fn lifting_checks() -> Vec<Check> {
    [3u64, 5, 7, 11]
        .into_iter()
        .map(|p| {
            Check::new(format!("lifting.roundtrip.p{p}"), level_for(p), Provenance::Derived, "500 samples per n <= 4", move |_| {
                let f = PrimeField::new(p).map_err(err)?;
                let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(p);
                for n in 1..=4 {
                    for _ in 0..500 {
                        let m = random_sl(&f, n, &mut rng);
                        let l = lift_sl(&f, &m).map_err(err)?;
                        if reduce(&f, &l) != m || det_integer(&l) != 1.into() {
                            return Ok(format!("failed for {m:?}"));
                        }
                    }
                }
                Ok("500 samples per n <= 4".into())
            })
        })
        .collect()
}

/// All checks, sorted by id.
pub fn all_checks() -> Vec<Check> {
    let mut checks = formula_checks();
    checks.extend(homology_checks());
    checks.extend(lifting_checks());
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    checks
}

/// Runs the checks at or below `level` whose id starts with `filter`, in parallel, and
/// returns outcomes in id order.
pub fn run(level: Level, filter: Option<&str>, opts: &HomologyOptions) -> Vec<VerificationOutcome> {
    let checks: Vec<Check> = all_checks()
        .into_iter()
        .filter(|c| c.level <= level && filter.map_or(true, |f| c.id.starts_with(f)))
        .collect();
    let mut out: Vec<VerificationOutcome> = checks.par_iter().map(|c| c.run(opts)).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids: Vec<String> = all_checks().into_iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn mismatch_reports_both_values() {
        let c = Check::new("x", Level::Quick, Provenance::Trivial, "2", |_| Ok("3".into()));
        let o = c.run(&HomologyOptions::default());
        assert_eq!((o.status, o.observed.as_str(), o.expected.as_str()), (Status::Fail, "3", "2"));
        let c = Check::new("y", Level::Quick, Provenance::Trivial, "2", |_| Err(ProbeError::Error("boom".into())));
        assert_eq!(c.run(&HomologyOptions::default()).reason.as_deref(), Some("boom"));
        let c = Check::new("z", Level::Quick, Provenance::Trivial, "2", |_| {
            Err(topcoh::Error::TooLarge { what: "complex", projected: 9, cap: 1 }.into())
        });
        assert_eq!(c.run(&HomologyOptions::default()).status, Status::Skipped);
    }

    #[test]
    fn formula_checks_pass() {
        for o in run(Level::Quick, Some("formula."), &HomologyOptions::default()) {
            assert_eq!(o.status, Status::Pass, "{o:?}");
        }
    }
}
