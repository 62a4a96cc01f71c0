//! The fourteen acceptance criteria as a runnable suite, shared by the
//! integration test and the `verify-all` command.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bc::{bc_rho, bc_sigma, check_tower, mgt_group, GroupAlgElem, MAX_MGT_N};
use crate::belyi::{catalog_words, det2, mat_hom, mat_mul, LiftingScheme, MatMode, SemigroupWord};
use crate::double::{system_maps, verify_axioms, Cochain, CocycleVariant};
use crate::enumerate::{count_labeled_bipartite_trees, count_single_cycle_belyi, enumerate_connected, enumerate_dessins};
use crate::hopf::{grade, Character, Convention, Monomial, EdgeCount, Grading, HopfAlgebra, HopfElement};
use crate::oracle::{brute_black_rooted_bipartite_trees, brute_labeled_bicoloured_trees, brute_spanning_trees_complete_bipartite};
use crate::poly::{brt, tutte, tutte_deletion_contraction};
use crate::qsm::gibbs::{gibbs, GibbsMode, PuiseuxPoly};
use crate::qsm::kms::kms_state;
use crate::qsm::partition::{
    closed_form, direct_sum, factorize, partition_closed, partition_enumerated, spf_sieve, ClosedSystem,
    DegreeSemigroup, EnumeratedMode,
};
use crate::qsm::series::{zeta, Accumulator};
use crate::qsm::theta::{census, z_extended, ThetaField, ZConvention};
use crate::ring::qf;
use crate::rota_baxter::{
    check_rb_relation, jones_character, martin_character, refined_jones, refined_martin, Birkhoff, PiContext,
    PolarContext, SignConvention,
};
use crate::{Dessin, Error, Result, Q};

/// Criteria expected to fail, with the reason recorded alongside the
/// coassociativity counterexamples in the report.
pub const KNOWN_UNATTAINABLE: &[u8] = &[3];

/// Pinned tolerances and sizes.
pub mod tol {
    /// `|Σ 2^{ω(n)} n^{−3} − ζ(3)²/ζ(6)|` at `n ≤ 10⁶`.
    pub const DIVISOR_SERIES: f64 = 1e-6;
    /// Gibbs N-mode direct vs closed form.
    pub const GIBBS_N: f64 = 1e-8;
    /// Series tolerance passed to the Gibbs and ζ evaluations.
    pub const SERIES: f64 = 1e-12;
    /// Floating slack added to a computed tail bound.
    pub const BOUND_SLACK: f64 = 1e-12;
    /// Cutoff for the `S` partition function.
    pub const S_CUTOFF: usize = 100_000;
    /// Cutoff for the divisor series and the `Υ` system.
    pub const DIVISOR_CUTOFF: usize = 1_000_000;
    /// Random pairs per Rota–Baxter context.
    pub const RB_PAIRS: usize = 200;
    /// Random word/dessin pairs for edge-count multiplicativity.
    pub const EDGE_PAIRS: usize = 60;
    /// Largest `d·d_η` in the edge-count check.
    pub const EDGE_LIMIT: usize = 400;
    /// Word degree cutoff for KMS states.
    pub const KMS_WORDS: usize = 12;
    /// Degree cutoff for the `Ω_θ` partition function.
    pub const THETA_CUTOFF: usize = 6;
    /// Degree cutoff for tree growth analysis.
    pub const GROWTH_CUTOFF: usize = 100;
}

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let budget = self.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        format!(
            "{} {:>2} {:<13} {:>9.3}s{}  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            budget,
            self.detail
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "known_unattainable": KNOWN_UNATTAINABLE.contains(&self.id),
            "detail": self.detail,
            "elapsed_s": self.elapsed.as_secs_f64(),
            "budget_s": self.budget.map(|b| b.as_secs()),
        })
    }
}

/// Results of a suite run.
#[derive(Clone, Debug)]
pub struct AcceptanceReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn failed_ids(&self) -> Vec<u8> {
        self.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }

    /// Failures outside the documented list.
    pub fn unexpected_failures(&self) -> Vec<u8> {
        self.failed_ids().into_iter().filter(|id| !KNOWN_UNATTAINABLE.contains(id)).collect()
    }

    pub fn summary(&self) -> String {
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        format!("{passed}/{} criteria passed; failing: {:?}", self.criteria.len(), self.failed_ids())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "seed": self.seed,
            "criteria": self.criteria.iter().map(CriterionResult::to_json).collect::<Vec<_>>(),
            "failed": self.failed_ids(),
            "known_unattainable": KNOWN_UNATTAINABLE,
        })
    }
}

type Check = fn(u64) -> Result<(bool, String)>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget_s: Option<u64>,
    run: Check,
}

const CRITERIA: [Criterion; 14] = [
    Criterion { id: 1, name: "trees", budget_s: Some(10), run: trees },
    Criterion { id: 2, name: "single-cycle", budget_s: None, run: single_cycle },
    Criterion { id: 3, name: "hopf", budget_s: Some(60), run: hopf },
    Criterion { id: 4, name: "grading", budget_s: None, run: grading },
    Criterion { id: 5, name: "tutte", budget_s: None, run: tutte_checks },
    Criterion { id: 6, name: "rota-baxter", budget_s: None, run: rota_baxter },
    Criterion { id: 7, name: "composition", budget_s: None, run: composition },
    Criterion { id: 8, name: "partition", budget_s: Some(30), run: partition },
    Criterion { id: 9, name: "gibbs", budget_s: None, run: gibbs_n },
    Criterion { id: 10, name: "omega-theta", budget_s: None, run: omega_theta },
    Criterion { id: 11, name: "kms", budget_s: None, run: kms },
    Criterion { id: 12, name: "bost-connes", budget_s: None, run: bost_connes },
    Criterion { id: 13, name: "quasi-hopf", budget_s: Some(120), run: quasi_hopf },
    Criterion { id: 14, name: "divergence", budget_s: None, run: divergence },
];

/// `(id, name)` of every criterion.
pub fn criteria() -> Vec<(u8, &'static str)> {
    CRITERIA.iter().map(|s| (s.id, s.name)).collect()
}

/// Resolve a selector (id or name) to a criterion id.
pub fn resolve(selector: &str) -> Result<u8> {
    CRITERIA
        .iter()
        .find(|s| s.name == selector || s.id.to_string() == selector)
        .map(|s| s.id)
        .ok_or_else(|| Error::Config(format!("unknown criterion `{selector}`")))
}

pub fn run_criterion(id: u8, seed: u64) -> Result<CriterionResult> {
    let entry = CRITERIA
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::Config(format!("unknown criterion {id}")))?;
    let start = Instant::now();
    let outcome = (entry.run)(seed);
    let elapsed = start.elapsed();
    let budget = entry.budget_s.map(Duration::from_secs);
    let (mut passed, mut detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail = format!("{detail}; over budget");
        }
    }
    Ok(CriterionResult { id, name: entry.name, passed, detail, elapsed, budget })
}

/// Run the selected criteria (all when `only` is empty) in id order.
pub fn run(only: &[u8], seed: u64) -> Result<AcceptanceReport> {
    let mut criteria = Vec::new();
    for entry in &CRITERIA {
        if only.is_empty() || only.contains(&entry.id) {
            criteria.push(run_criterion(entry.id, seed)?);
        }
    }
    Ok(AcceptanceReport { seed, criteria })
}

fn pow(b: u128, e: usize) -> u128 {
    b.pow(e as u32)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn trees(_seed: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut cases = 0;
    for d in 1..=6usize {
        cases += 1;
        let total = 2 * pow(d as u128 + 1, d - 1);
        if brute_labeled_bicoloured_trees(d) != total || count_labeled_bipartite_trees(d, None)? != total {
            bad.push(format!("d={d}"));
        }
        let mut refined = 0u128;
        for m in 1..=d {
            cases += 1;
            let n = d + 1 - m;
            let want = pow(m as u128, n) * pow(n as u128, m - 1);
            if brute_black_rooted_bipartite_trees(m, n) != want || count_labeled_bipartite_trees(d, Some(m))? != want {
                bad.push(format!("d={d},m={m}"));
            }
            refined += binomial(d as u128 + 1, m as u128) * brute_spanning_trees_complete_bipartite(m, n);
        }
        if refined != total {
            bad.push(format!("d={d} refinement"));
        }
    }
    Ok((bad.is_empty(), format!("{cases} counts vs brute force; mismatches {bad:?}")))
}

fn single_cycle(_seed: u64) -> Result<(bool, String)> {
    for d in 3..=1000 {
        count_single_cycle_belyi(d)?;
    }
    let spots = [(3, 1), (6, 4), (7, 6)];
    let mut bad = Vec::new();
    for (d, want) in spots {
        let got = count_single_cycle_belyi(d)?;
        if got != want {
            bad.push(format!("N({d})={got}"));
        }
    }
    Ok((bad.is_empty(), format!("integral on 3..=1000; spot mismatches {bad:?}")))
}

/// Named 4-edge fixtures.
pub fn named_four_edge() -> Vec<(&'static str, Dessin)> {
    vec![
        ("star4", Dessin::star(4)),
        ("white_star4", Dessin::white_star(4)),
        ("path4", Dessin::path(4)),
        ("polygon2", Dessin::polygon(2)),
        ("bouquet4", Dessin::bouquet(4)),
    ]
}

fn hopf_fixtures() -> Result<Vec<(String, Dessin)>> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for x in enumerate_connected(d)? {
            out.push((x.to_text(), x));
        }
    }
    for (n, x) in named_four_edge() {
        out.push((n.to_string(), x));
    }
    Ok(out)
}

fn hopf(_seed: u64) -> Result<(bool, String)> {
    let mut alg = HopfAlgebra::new(Convention::Reduced);
    let fixtures = hopf_fixtures()?;
    let (mut coassoc, mut counit, mut antipode) = (Vec::new(), Vec::new(), Vec::new());
    for (name, x) in &fixtures {
        let e = HopfElement::dessin(x);
        if !alg.is_coassociative_on(x)? {
            coassoc.push(name.clone());
        }
        if !alg.counit_laws_hold(&e)? {
            counit.push(name.clone());
        }
        if !alg.antipode_identity_holds(&e)? {
            antipode.push(name.clone());
        }
    }
    let ok = coassoc.is_empty() && counit.is_empty() && antipode.is_empty();
    Ok((
        ok,
        format!(
            "{} fixtures; coassociativity fails on {:?}; counit fails on {:?}; antipode fails on {:?}",
            fixtures.len(),
            coassoc,
            counit,
            antipode
        ),
    ))
}

fn grading(_seed: u64) -> Result<(bool, String)> {
    let alg = HopfAlgebra::new(Convention::Reduced);
    let mut fixtures = Vec::new();
    for d in 1..=4 {
        fixtures.extend(enumerate_connected(d)?);
    }
    fixtures.extend(named_four_edge().into_iter().map(|(_, x)| x));
    let (mut terms, mut bad) = (0usize, 0usize);
    for x in &fixtures {
        for rec in alg.quotient_records(x)? {
            terms += 1;
            let b0 = rec.sub.num_components();
            let additive = [Grading::B1, Grading::Edges, Grading::Vertices]
                .iter()
                .all(|&g| grade(&rec.sub, g) + grade(&rec.quotient, g) == grade(x, g));
            let v = rec.sub.num_vertices() + rec.quotient.num_vertices() == x.num_vertices() + 2 * b0;
            let e = rec.sub.degree() + rec.quotient.degree() == x.degree() + b0;
            if !(additive && v && e) {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{} fixtures, {terms} coproduct terms, {bad} violations", fixtures.len())))
}

fn tutte_checks(_seed: u64) -> Result<(bool, String)> {
    let (mut n, mut bad) = (0usize, Vec::new());
    for d in 1..=5 {
        for x in enumerate_dessins(d, None)? {
            n += 1;
            let t = tutte(&x)?;
            let b = brt(&x)?;
            if t != tutte_deletion_contraction(&x) || b.at_z_one() != t || b.degree_in(2) as usize != 2 * x.genus() {
                bad.push(x.to_text());
            }
        }
    }
    Ok((bad.is_empty(), format!("{n} dessins of degree ≤ 5; failures {bad:?}")))
}

fn rota_baxter(seed: u64) -> Result<(bool, String)> {
    let polar = PolarContext::new()?;
    let pi = PiContext::new()?;
    let rb = check_rb_relation(&polar, tol::RB_PAIRS, seed) + check_rb_relation(&pi, tol::RB_PAIRS, seed ^ 1);
    let jones = |d: &Dessin| jones_character(d);
    let martin = |d: &Dessin| martin_character(d);
    let mut bj = Birkhoff::new(&polar, &jones, Convention::Reduced);
    let mut bm = Birkhoff::new(&pi, &martin, Convention::Reduced);
    let (mut recon, mut routes, mut n) = (0usize, 0usize, 0usize);
    for d in 1..=3 {
        for x in enumerate_dessins(d, None)? {
            n += 1;
            let e = HopfElement::dessin(&x);
            let m = Monomial::from_factors(&x.components());
            if bj.reconstruct(&e)? != jones.on_monomial(&m) {
                recon += 1;
            }
            if bm.reconstruct(&e)? != martin.on_monomial(&m) {
                recon += 1;
            }
            if !x.is_connected() {
                continue;
            }
            let (jm, jp) = refined_jones(&x, Convention::Reduced)?;
            if bj.minus_connected(&x)? != jm || bj.plus_connected(&x)? != jp {
                routes += 1;
            }
            let (mm, mp) = refined_martin(&x, Convention::Reduced, SignConvention::Birkhoff)?;
            if bm.minus_connected(&x)?.coefficients() != &mm[..] || bm.plus_connected(&x)?.coefficients() != &mp[..] {
                routes += 1;
            }
        }
    }
    Ok((
        rb == 0 && recon == 0 && routes == 0,
        format!(
            "RB failures {rb}/{}; reconstruction failures {recon} over {n} dessins × 2 contexts; recursion mismatches {routes}",
            2 * tol::RB_PAIRS
        ),
    ))
}

fn random_dessin(rng: &mut ChaCha8Rng, d: usize) -> Result<Dessin> {
    let mut s0: Vec<usize> = (0..d).collect();
    let mut s1: Vec<usize> = (0..d).collect();
    s0.shuffle(rng);
    s1.shuffle(rng);
    Dessin::from_permutations(s0, s1)
}

fn random_word(rng: &mut ChaCha8Rng) -> SemigroupWord {
    let k = rng.gen_range(0..=3);
    let factors = (0..k).map(|_| Q::from_integer(BigInt::from(rng.gen_range(2..=5)))).collect();
    SemigroupWord { eps0: rng.gen(), factors, eps1: k > 0 && rng.gen() }
}

fn composition(seed: u64) -> Result<(bool, String)> {
    let mut star_bad = Vec::new();
    for n in 1..=5 {
        let p = LiftingScheme::power(n)?;
        for d in 1..=5 {
            if !p.apply(&Dessin::star(d))?.is_isomorphic(&Dessin::star(n * d)) {
                star_bad.push((n, d));
            }
        }
    }
    let schemes: Vec<LiftingScheme> =
        catalog_words(2, 3).iter().map(SemigroupWord::to_scheme).collect::<Result<_>>()?;
    let fixing: Vec<&LiftingScheme> = schemes.iter().filter(|s| s.fixes_marked_points()).collect();
    let (mut law, mut det, mut pairs) = (0usize, 0usize, 0usize);
    for s1 in &fixing {
        for s2 in &fixing {
            pairs += 1;
            let c = LiftingScheme::compose(s1, s2);
            let mc = mat_hom(&c.ram_tuple(), MatMode::Mat2);
            if mc != mat_mul(&mat_hom(&s1.ram_tuple(), MatMode::Mat2), &mat_hom(&s2.ram_tuple(), MatMode::Mat2)) {
                law += 1;
            }
            if det2(&mc) != c.sheets() as i64 {
                det += 1;
            }
        }
    }
    let mut outside = 0usize;
    for s1 in &schemes {
        for s2 in &schemes {
            let c = LiftingScheme::compose(s1, s2);
            if mat_hom(&c.ram_tuple(), MatMode::Mat2)
                != mat_mul(&mat_hom(&s1.ram_tuple(), MatMode::Mat2), &mat_hom(&s2.ram_tuple(), MatMode::Mat2))
            {
                outside += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edge_bad = 0usize;
    let mut tried = 0usize;
    while tried < tol::EDGE_PAIRS {
        let w = random_word(&mut rng);
        let deg = w.degree().to_integer();
        let deg: usize = deg.try_into().map_err(|_| Error::Domain("word degree too large".into()))?;
        let d = rng.gen_range(1..=6);
        if d * deg > tol::EDGE_LIMIT {
            continue;
        }
        tried += 1;
        let x = random_dessin(&mut rng, d)?;
        if w.to_scheme()?.apply(&x)?.degree() != d * deg {
            edge_bad += 1;
        }
    }
    Ok((
        star_bad.is_empty() && law == 0 && det == 0 && edge_bad == 0,
        format!(
            "star failures {star_bad:?}; Mat2 law failures {law}/{pairs} on marked-point-fixing catalog pairs \
             ({outside}/{} on the full catalog); det failures {det}; edge-count failures {edge_bad}/{tried}",
            schemes.len() * schemes.len()
        ),
    ))
}

fn partition(_seed: u64) -> Result<(bool, String)> {
    let s = partition_closed(ClosedSystem::S, 2.0, tol::S_CUTOFF)?;
    let s_ok = s.discrepancy() <= s.direct.tail_bound + tol::BOUND_SLACK;
    let spf = spf_sieve(tol::DIVISOR_CUTOFF);
    let mut acc = Accumulator::new();
    for n in 1..=tol::DIVISOR_CUTOFF {
        let w = factorize(n, &spf).len() as i32;
        acc.add(2f64.powi(w) * (n as f64).powi(-3));
    }
    let z3 = zeta(3.0, tol::SERIES)?.value;
    let z6 = zeta(6.0, tol::SERIES)?.value;
    let div_gap = (acc.value() - z3 * z3 / z6).abs();
    let u = partition_closed(ClosedSystem::Upsilon, 3.0, tol::DIVISOR_CUTOFF)?;
    let u_ok = u.discrepancy() <= u.direct.tail_bound + tol::BOUND_SLACK;
    let want_u = 4.0 * z6 / (2.0 * z6 - z3 * z3);
    let u_form = (u.closed_form - want_u).abs() < 1e-12;
    let diverges = matches!(closed_form(ClosedSystem::Upsilon, 2.0), Err(Error::Divergent(_)))
        && direct_sum(ClosedSystem::Upsilon, 2.0, 1000).map(|v| !v.tail_bound.is_finite() || v.divergent).unwrap_or(true);
    Ok((
        s_ok && div_gap < tol::DIVISOR_SERIES && u_ok && u_form && diverges,
        format!(
            "S(2): gap {:.3e} ≤ bound {:.3e}; divisor series gap {div_gap:.3e}; Υ(3): gap {:.3e} ≤ bound {:.3e}; Υ(2) divergent {diverges}",
            s.discrepancy(),
            s.direct.tail_bound,
            u.discrepancy(),
            u.direct.tail_bound
        ),
    ))
}

fn gibbs_n(_seed: u64) -> Result<(bool, String)> {
    let h: PuiseuxPoly = "t + t^2".parse()?;
    let n = gibbs(GibbsMode::N, &h, 0.3, 2.5, tol::SERIES, 1 << 22)?;
    let q = gibbs(GibbsMode::Q, &h, 0.3, 2.5, tol::SERIES, 100_000)?;
    Ok((
        n.gap() < tol::GIBBS_N,
        format!(
            "N-mode gap {:.3e}; Q-mode direct {:.12} closed {:.12} gap {:.3e}",
            n.gap(),
            q.direct.value,
            q.closed.value,
            q.gap()
        ),
    ))
}

fn omega_theta(_seed: u64) -> Result<(bool, String)> {
    let field = ThetaField::default();
    let c = census(&field, 4, 3, 3)?;
    let z = z_extended(&field, 2.0, tol::THETA_CUTOFF, ZConvention::Shifted)?;
    Ok((
        c.consistent() && z.monotone(),
        format!(
            "{} labels, {} groups, largest {}, unexpected coincidences {}, predicted partners unequal {}; Z(2) monotone {}",
            c.labels,
            c.groups.len(),
            c.max_group(),
            c.unexpected.len(),
            c.predicted_not_equal.len(),
            z.monotone()
        ),
    ))
}

fn kms(_seed: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut n = 0usize;
    for lambda in [qf(1, 2), qf(1, 3)] {
        let phi = EdgeCount::new(lambda)?;
        for d in 1..=3 {
            for x in enumerate_dessins(d, None)? {
                n += 1;
                let mut prev = f64::INFINITY;
                for beta in [5.0, 10.0, 20.0] {
                    let gap = kms_state(&x, &phi, beta, tol::KMS_WORDS)?.deviation.abs();
                    if !(gap < prev) {
                        bad.push(x.to_text());
                        break;
                    }
                    prev = gap;
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{n} (character, dessin) pairs; non-decreasing on {bad:?}")))
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

fn bost_connes(seed: u64) -> Result<(bool, String)> {
    let tower = check_tower(60);
    let mut orders = Vec::new();
    let mut order_bad = Vec::new();
    for n in 1..=MAX_MGT_N {
        let g = mgt_group(n)?;
        orders.push(g.order());
        if g.order() != n * totient(n) {
            order_bad.push(n);
        }
    }
    let spots = orders[1] == 2 && orders[4] == 20;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sr_bad = 0usize;
    for _ in 0..50 {
        let x = GroupAlgElem::random(&mut rng, 12, 4);
        for n in 1..=12u64 {
            let lhs = bc_sigma(n, &bc_rho(n, &x)?)?;
            if lhs != x.scale(&Q::from_integer(BigInt::from(n))) {
                sr_bad += 1;
            }
        }
    }
    let ok = tower.involution_failures == 0 && tower.compatibility_failures == 0 && order_bad.is_empty() && spots && sr_bad == 0;
    Ok((
        ok,
        format!(
            "tower {} cases, {} involution / {} compatibility failures; mGT orders {orders:?} (n·φ(n) mismatches {order_bad:?}); σρ̃ failures {sr_bad}",
            tower.cases, tower.involution_failures, tower.compatibility_failures
        ),
    ))
}

fn quasi_hopf(_seed: u64) -> Result<(bool, String)> {
    let mut cocycle_bad = Vec::new();
    let mut axioms_a0 = Vec::new();
    let mut other_a = (0usize, 0usize);
    for m in 2..=6 {
        for a in 0..m {
            if Cochain::standard(m, a, CocycleVariant::Floor)?.cocycle_failures().0 != 0 {
                cocycle_bad.push((m, a));
            }
            let r = verify_axioms(m, a, CocycleVariant::Floor)?;
            if a == 0 {
                if !r.all_pass() {
                    axioms_a0.push(m);
                }
            } else {
                other_a.1 += 1;
                if r.all_pass() {
                    other_a.0 += 1;
                }
            }
        }
    }
    let mut system_bad = Vec::new();
    for (n, m) in [(2, 2), (2, 3), (3, 2)] {
        let r = system_maps(n, m)?;
        if !r.r_transport || r.pullback_failures != 0 {
            system_bad.push((n, m));
        }
    }
    Ok((
        cocycle_bad.is_empty() && axioms_a0.is_empty() && system_bad.is_empty(),
        format!(
            "cocycle failures {cocycle_bad:?}; a=0 axiom failures {axioms_a0:?}; a≠0 all axioms {}/{}; level-system failures {system_bad:?}",
            other_a.0, other_a.1
        ),
    ))
}

fn divergence(_seed: u64) -> Result<(bool, String)> {
    let mut flags = Vec::new();
    for beta in [5.0, 10.0, 50.0] {
        let r = partition_enumerated(&EnumeratedMode::DegreeSemigroup(DegreeSemigroup::Trees), beta, tol::GROWTH_CUTOFF)?;
        flags.push((beta, r.series.divergent, r.growth.increasing_from));
    }
    Ok((flags.iter().all(|f| f.1), format!("(β, divergent, terms increase from) {flags:?}")))
}
