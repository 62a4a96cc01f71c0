mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dessins::acceptance;
use dessins::bc::{check_tower, mgt_group};
use dessins::belyi::{det2, mat_hom, mat_mul, LiftingScheme, MatMode, SemigroupWord};
use dessins::double::{system_maps, verify_axioms, CocycleVariant};
use dessins::enumerate::{count_single_cycle_belyi, enumerate_dessins_guarded, tree_count_table, MAX_ENUM_DEGREE};
use dessins::hopf::{BalancedRule, Convention, EdgeCount, HopfAlgebra, HopfElement, OrbitTable};
use dessins::poly::{brt, specialize, tutte, Specialization};
use dessins::qsm::gibbs::{gibbs, GibbsMode, PuiseuxPoly};
use dessins::qsm::kms::kms_state;
use dessins::qsm::partition::{
    partition_closed, partition_enumerated, ClosedSystem, DegreeSemigroup, EnumeratedMode,
};
use dessins::qsm::theta::{census, z_extended, ThetaField, ZConvention};
use dessins::ring::{parse_q, q_to_string};
use dessins::rota_baxter::{
    jones_character, martin_character, refined_jones, refined_martin, Birkhoff, PiContext, PolarContext,
    SignConvention,
};
use dessins::{Dessin, Error, Result};
use report::{Format, Report};
use serde_json::json;

/// Environment variable overriding the default series tolerance.
const TOL_ENV: &str = "DESSINS_TOL";
const DEFAULT_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "dessins", version, about = "Dessins d'enfant: enumeration, Hopf algebra, polynomials, Belyi maps and quantum statistical systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a single dessin.
    Dessin(DessinArg),
    /// Enumeration and counting.
    #[command(subcommand)]
    Enum(EnumCmd),
    /// Coproduct, antipode and Hopf identities.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Tutte and Bollobás–Riordan polynomials.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Birkhoff factorization of the Jones or Martin character.
    Birkhoff(BirkhoffArgs),
    /// Lifting schemes of Belyi-extending maps.
    #[command(subcommand)]
    Compose(ComposeCmd),
    /// Partition functions, Gibbs and KMS states.
    #[command(subcommand)]
    Qsm(QsmCmd),
    /// Bost–Connes endomorphisms and mGT.
    #[command(subcommand)]
    Bc(BcCmd),
    /// Twisted Drinfeld doubles of cyclic groups.
    #[command(subcommand)]
    Double(DoubleCmd),
    /// Run the acceptance criteria.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Clone)]
struct DessinArg {
    /// Dessin as text, e.g. "d=2; s0=(0 1); s1=(0 1)".
    #[arg(long, conflicts_with = "input")]
    dessin: Option<String>,
    /// File holding a dessin as text or JSON.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl DessinArg {
    fn load(&self) -> Result<Dessin> {
        match (&self.dessin, &self.input) {
            (Some(s), _) => Dessin::parse_text(s),
            (None, Some(p)) => {
                let raw = std::fs::read_to_string(p)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
                if raw.trim_start().starts_with('{') {
                    let v: serde_json::Value = serde_json::from_str(&raw).map_err(|e| Error::Parse {
                        line: e.line(),
                        column: e.column(),
                        message: e.to_string(),
                    })?;
                    Dessin::from_json(&v)
                } else {
                    Dessin::parse_text(&raw)
                }
            }
            (None, None) => Err(Error::Config("a dessin is required (--dessin or --input)".into())),
        }
    }
}

#[derive(Subcommand)]
enum EnumCmd {
    /// Isomorphism classes of a given degree.
    Dessins {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        trees: bool,
        /// Degree guard.
        #[arg(long, default_value_t = MAX_ENUM_DEGREE)]
        max_degree: usize,
    },
    /// Labeled bipartite tree counts by black-vertex number.
    Trees {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Normalized single-cycle Belyi map counts.
    SingleCycle {
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 20)]
        to: usize,
    },
}

#[derive(Subcommand)]
enum HopfCmd {
    Coproduct {
        #[command(flatten)]
        dessin: DessinArg,
        #[arg(long, default_value = "reduced")]
        convention: Convention,
    },
    Antipode {
        #[command(flatten)]
        dessin: DessinArg,
        #[arg(long, default_value = "reduced")]
        convention: Convention,
    },
    /// Coassociativity, counit and antipode identities.
    Check {
        #[command(flatten)]
        dessin: DessinArg,
        #[arg(long, default_value = "reduced")]
        convention: Convention,
    },
    /// Coproduct restricted by an orbit table.
    Balanced {
        #[command(flatten)]
        dessin: DessinArg,
        /// JSON array of orbits, each an array of dessins.
        #[arg(long)]
        orbits: Option<PathBuf>,
        /// balanced, accept-all or reject-all.
        #[arg(long, default_value = "balanced")]
        rule: String,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    Tutte(DessinArg),
    Brt(DessinArg),
    Specialize {
        #[command(flatten)]
        dessin: DessinArg,
        /// jones, martin, kauffman or kauffman-alt.
        #[arg(long)]
        mode: Specialization,
    },
}

#[derive(Args)]
struct BirkhoffArgs {
    #[command(flatten)]
    dessin: DessinArg,
    /// polar (Jones character) or pi (Martin character).
    #[arg(long, default_value = "polar")]
    context: String,
    /// birkhoff or printed.
    #[arg(long, default_value = "birkhoff")]
    sign: String,
    #[arg(long, default_value = "reduced")]
    convention: Convention,
}

#[derive(Subcommand)]
enum ComposeCmd {
    /// Apply the scheme of a semigroup word to a dessin.
    Apply {
        /// Word such as "mu2 F mu3"; the leftmost letter acts first.
        #[arg(long)]
        word: SemigroupWord,
        #[command(flatten)]
        dessin: DessinArg,
    },
    /// Matrices of two schemes and of their composite.
    Mat {
        #[arg(long)]
        inner: SemigroupWord,
        #[arg(long)]
        outer: SemigroupWord,
        /// mat2, mat2n or mat3.
        #[arg(long, default_value = "mat2")]
        mode: MatMode,
    },
}

#[derive(Subcommand)]
enum QsmCmd {
    /// Closed form against the truncated sum for `S` or `Upsilon`.
    Partition {
        #[arg(long)]
        system: ClosedSystem,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 100_000)]
        cutoff: usize,
    },
    /// Degree-graded series with term-growth analysis.
    Series {
        /// bc, trees, single-cycle or s-words.
        #[arg(long)]
        semigroup: DegreeSemigroup,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 60)]
        cutoff: usize,
    },
    Gibbs {
        #[arg(long)]
        mode: GibbsMode,
        /// Puiseux polynomial in t, e.g. "t + t^2".
        #[arg(long)]
        h: PuiseuxPoly,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1 << 20)]
        cutoff: usize,
        /// Series tolerance; also read from DESSINS_TOL.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// KMS state of an edge-count character.
    Kms {
        #[command(flatten)]
        dessin: DessinArg,
        #[arg(long, default_value = "1/2")]
        lambda: String,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 12)]
        words: usize,
    },
    /// Eigenvalue coincidence census of the extended system.
    ThetaCensus {
        #[arg(long, default_value_t = 2)]
        n: i64,
        #[arg(long, default_value_t = 4)]
        max_d: usize,
        #[arg(long, default_value_t = 3)]
        max_a: u64,
        #[arg(long, default_value_t = 3)]
        max_b: u64,
    },
    /// Truncated partition function of the extended system.
    ThetaZ {
        #[arg(long, default_value_t = 2)]
        n: i64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
        /// shifted or printed.
        #[arg(long, default_value = "shifted")]
        convention: String,
    },
}

#[derive(Subcommand)]
enum BcCmd {
    Mgt {
        #[arg(long)]
        n: usize,
    },
    /// Involution and compatibility over all levels `nm ≤ max`.
    Tower {
        #[arg(long, default_value_t = 60)]
        max: u64,
    },
}

#[derive(Subcommand)]
enum DoubleCmd {
    /// Exhaustive axiom check for `D^ω(Z/m)`.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        /// floor or literal.
        #[arg(long, default_value = "floor")]
        variant: CocycleVariant,
    },
    /// Maps of the level system `Z/nm → Z/m`.
    System {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Criterion id or name; repeatable.
    #[arg(long)]
    only: Vec<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidPermutation(_) | Error::Domain(_) | Error::Contract(_) => 1,
        Error::Guard { .. } | Error::Divergent(_) | Error::Coverage(_) | Error::Config(_) => 2,
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64> {
    if let Some(t) = flag {
        return positive("tol", t);
    }
    match std::env::var(TOL_ENV) {
        Ok(s) => {
            let t: f64 = s.parse().map_err(|_| Error::Config(format!("{TOL_ENV}={s} is not a number")))?;
            positive(TOL_ENV, t)
        }
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn positive(what: &str, t: f64) -> Result<f64> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(Error::Config(format!("{what} must be positive, got {t}")))
    }
}

fn dessin_report(x: &Dessin) -> Report {
    let r = x.ramification();
    let canon = x.canonical_form();
    let json = json!({
        "dessin": x.to_json(),
        "text": x.to_text(),
        "canonical": canon.to_text(),
        "ramification": serde_json::to_value(&r).expect("serializes"),
        "genus": x.genus(),
        "components": x.num_components(),
        "automorphisms": x.automorphism_count().to_string(),
        "clean": x.is_clean(),
        "regular": x.is_regular(),
        "tree": x.is_tree(),
    });
    let text = format!(
        "{}\ncanonical {}\ndegree {}  black {}  white {}  faces {}  genus {}  components {}\nprofiles μ={:?} ν={:?} ρ={:?}\nautomorphisms {}  clean {}  regular {}  tree {}",
        x.to_text(),
        canon.to_text(),
        r.d,
        r.m,
        r.n_white,
        r.r,
        x.genus(),
        x.num_components(),
        r.mu,
        r.nu,
        r.rho,
        x.automorphism_count(),
        x.is_clean(),
        x.is_regular(),
        x.is_tree()
    );
    Report::new(json, text)
}

fn run_enum(cmd: EnumCmd) -> Result<Report> {
    match cmd {
        EnumCmd::Dessins { degree, connected, trees, max_degree } => {
            let filter = move |x: &Dessin| (!connected || x.is_connected()) && (!trees || x.is_tree());
            let all = enumerate_dessins_guarded(degree, max_degree, Some(&filter))?;
            let rows: Vec<Vec<String>> = all
                .iter()
                .map(|x| vec![x.to_text(), x.genus().to_string(), x.num_components().to_string()])
                .collect();
            let text = all.iter().map(Dessin::to_text).collect::<Vec<_>>().join("\n");
            Ok(Report::new(
                json!({"degree": degree, "count": all.len(), "dessins": all.iter().map(Dessin::to_text).collect::<Vec<_>>()}),
                format!("{text}\n{} classes", all.len()),
            )
            .with_table(&["dessin", "genus", "components"], rows))
        }
        EnumCmd::Trees { max_degree } => {
            if max_degree == 0 {
                return Err(Error::Domain("max degree must be positive".into()));
            }
            let t = tree_count_table(max_degree);
            let rows: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|(p, c)| vec![p[0].to_string(), p[1].to_string(), q_to_string(c)])
                .collect();
            Ok(Report::new(serde_json::to_value(&t).expect("serializes"), t.to_csv()).with_table(&["d", "m", "count"], rows))
        }
        EnumCmd::SingleCycle { from, to } => {
            let mut rows = Vec::new();
            for d in from..=to {
                rows.push(vec![d.to_string(), count_single_cycle_belyi(d)?.to_string()]);
            }
            let text = rows.iter().map(|r| format!("N({}) = {}", r[0], r[1])).collect::<Vec<_>>().join("\n");
            let json = json!(rows.iter().map(|r| json!({"d": r[0].parse::<usize>().unwrap_or(0), "count": r[1]})).collect::<Vec<_>>());
            Ok(Report::new(json, text).with_table(&["d", "count"], rows))
        }
    }
}

fn run_hopf(cmd: HopfCmd) -> Result<Report> {
    match cmd {
        HopfCmd::Coproduct { dessin, convention } => {
            let x = dessin.load()?;
            let mut alg = HopfAlgebra::new(convention);
            let t = alg.coproduct(&HopfElement::dessin(&x))?;
            let terms: Vec<serde_json::Value> = t
                .terms()
                .iter()
                .map(|(k, c)| json!({"left": k[0].to_json(), "right": k[1].to_json(), "coeff": q_to_string(c)}))
                .collect();
            Ok(Report::new(json!({"dessin": x.to_text(), "terms": terms}), t.to_string()))
        }
        HopfCmd::Antipode { dessin, convention } => {
            let x = dessin.load()?;
            let mut alg = HopfAlgebra::new(convention);
            let s = alg.antipode(&HopfElement::dessin(&x))?;
            Ok(Report::new(json!({"dessin": x.to_text(), "antipode": s.to_json()}), s.to_string()))
        }
        HopfCmd::Check { dessin, convention } => {
            let x = dessin.load()?;
            let mut alg = HopfAlgebra::new(convention);
            let e = HopfElement::dessin(&x);
            let coassoc = alg.is_coassociative_on(&x)?;
            let counit = alg.counit_laws_hold(&e)?;
            let antipode = alg.antipode_identity_holds(&e)?;
            let mut json = json!({"dessin": x.to_text(), "coassociative": coassoc, "counit": counit, "antipode": antipode});
            let mut text = format!("coassociative {coassoc}\ncounit {counit}\nantipode {antipode}");
            if !coassoc {
                let (l, r) = alg.coassociativity_sides(&e)?;
                let diff = l.sub(&r);
                json["difference"] = json!(diff.to_string());
                text.push_str(&format!("\n(Δ⊗id)Δ − (id⊗Δ)Δ = {diff}"));
            }
            Ok(Report::new(json, text).finding(!(coassoc && counit && antipode)))
        }
        HopfCmd::Balanced { dessin, orbits, rule } => {
            let x = dessin.load()?;
            let orbits = orbits.ok_or_else(|| Error::Coverage("balanced coproduct needs an orbit table (--orbits)".into()))?;
            let raw = std::fs::read_to_string(&orbits)
                .map_err(|e| Error::Coverage(format!("orbit table {} unavailable: {e}", orbits.display())))?;
            let v: serde_json::Value = serde_json::from_str(&raw).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            let table = OrbitTable::from_json(&v)?;
            let rule = match rule.as_str() {
                "balanced" => BalancedRule::Balanced,
                "accept-all" => BalancedRule::AcceptAll,
                "reject-all" => BalancedRule::RejectAll,
                other => return Err(Error::Config(format!("unknown rule `{other}`"))),
            };
            let mut alg = HopfAlgebra::default();
            let t = alg.coproduct_balanced_connected(&x, &table, &rule)?;
            Ok(Report::new(json!({"dessin": x.to_text(), "coproduct": t.to_string(), "terms": t.len()}), t.to_string()))
        }
    }
}

fn run_poly(cmd: PolyCmd) -> Result<Report> {
    let (x, name, p) = match cmd {
        PolyCmd::Tutte(d) => {
            let x = d.load()?;
            let p = tutte(&x)?;
            (x, "tutte", (p.to_string(), p.to_json()))
        }
        PolyCmd::Brt(d) => {
            let x = d.load()?;
            let p = brt(&x)?;
            (x, "brt", (p.to_string(), p.to_json()))
        }
        PolyCmd::Specialize { dessin, mode } => {
            let x = dessin.load()?;
            let p = specialize(&x, mode)?;
            (x, "specialization", (p.to_string(), p.to_json()))
        }
    };
    Ok(Report::new(json!({"dessin": x.to_text(), "kind": name, "polynomial": p.0, "terms": p.1}), p.0))
}

fn run_birkhoff(args: BirkhoffArgs) -> Result<Report> {
    let x = args.dessin.load()?;
    if !x.is_connected() {
        return Err(Error::Domain("Birkhoff factorization is reported for connected dessins".into()));
    }
    let sign = match args.sign.as_str() {
        "birkhoff" => SignConvention::Birkhoff,
        "printed" => SignConvention::Printed,
        other => return Err(Error::Config(format!("unknown sign convention `{other}`"))),
    };
    let (report, refined) = match args.context.as_str() {
        "polar" => {
            let ctx = PolarContext::new()?;
            let phi = |d: &Dessin| jones_character(d);
            let mut b = Birkhoff::new(&ctx, &phi, args.convention).with_sign(sign);
            let r = b.report(&x)?;
            let (m, p) = refined_jones(&x, args.convention)?;
            let agree = sign == SignConvention::Printed || (m.to_string() == r.phi_minus && p.to_string() == r.phi_plus);
            (r, json!({"minus": m.to_string(), "plus": p.to_string(), "agrees": agree}))
        }
        "pi" => {
            let ctx = PiContext::new()?;
            let phi = |d: &Dessin| martin_character(d);
            let mut b = Birkhoff::new(&ctx, &phi, args.convention).with_sign(sign);
            let r = b.report(&x)?;
            let (m, p) = refined_martin(&x, args.convention, sign)?;
            let minus: Vec<String> = m.iter().map(q_to_string).collect();
            let plus: Vec<String> = p.iter().map(q_to_string).collect();
            let agree = b.minus_connected(&x)?.coefficients() == &m[..] || sign == SignConvention::Printed;
            (r, json!({"minus": minus, "plus": plus, "agrees": agree}))
        }
        other => return Err(Error::Config(format!("unknown context `{other}`"))),
    };
    let mut json = report.to_json();
    json["refined"] = refined.clone();
    json["sign"] = json!(args.sign);
    let text = format!(
        "φ   = {}\nφ₋  = {}\nφ₊  = {}\nreconstruction {}\nrefined recursion agrees {}",
        report.phi, report.phi_minus, report.phi_plus, report.reconstruction_check, refined["agrees"]
    );
    let failed = !report.reconstruction_check || refined["agrees"] == json!(false);
    Ok(Report::new(json, text).finding(failed))
}

fn run_compose(cmd: ComposeCmd) -> Result<Report> {
    match cmd {
        ComposeCmd::Apply { word, dessin } => {
            let x = dessin.load()?;
            let s = word.to_scheme()?;
            let y = s.apply(&x)?;
            let ok = y.degree() == s.sheets() * x.degree();
            Ok(Report::new(
                json!({
                    "word": word.to_string(),
                    "tuple": s.ram_tuple().to_string(),
                    "input": x.to_text(),
                    "output": y.to_json(),
                    "output_text": y.to_text(),
                    "edge_count_multiplicative": ok,
                }),
                format!("{}\ncanonical {}", y.to_text(), y.canonical_form().to_text()),
            )
            .finding(!ok))
        }
        ComposeCmd::Mat { inner, outer, mode } => {
            let s1 = inner.to_scheme()?;
            let s2 = outer.to_scheme()?;
            let c = LiftingScheme::compose(&s1, &s2);
            let (m1, m2, mc) = (mat_hom(&s1.ram_tuple(), mode), mat_hom(&s2.ram_tuple(), mode), mat_hom(&c.ram_tuple(), mode));
            let law = mc == mat_mul(&m1, &m2);
            let fixes = s1.fixes_marked_points() && s2.fixes_marked_points();
            let det_ok = mode == MatMode::Mat3 || det2(&mc) == c.sheets() as i64;
            let json = json!({
                "inner": m1, "outer": m2, "composite": mc,
                "law_holds": law, "fixes_marked_points": fixes, "det_equals_degree": det_ok,
            });
            let text = format!(
                "inner {m1:?}\nouter {m2:?}\ncomposite {mc:?}\nlaw holds {law} (both fix 0,1,∞: {fixes})\ndet = degree {det_ok}"
            );
            Ok(Report::new(json, text).finding(fixes && !(law && det_ok)))
        }
    }
}

fn run_qsm(cmd: QsmCmd) -> Result<Report> {
    match cmd {
        QsmCmd::Partition { system, beta, cutoff } => {
            let r = partition_closed(system, beta, cutoff)?;
            let text = format!(
                "{:?} at β = {beta}\nclosed form {:.15}\ntruncated   {:.15} (cutoff {}, tail ≤ {:.3e})\ndiscrepancy {:.3e} within bound {}",
                system,
                r.closed_form,
                r.direct.value,
                r.direct.cutoff,
                r.direct.tail_bound,
                r.discrepancy(),
                r.agrees()
            );
            Ok(Report::new(r.to_json(), text).finding(!r.agrees()))
        }
        QsmCmd::Series { semigroup, beta, cutoff } => {
            let r = partition_enumerated(&EnumeratedMode::DegreeSemigroup(semigroup), beta, cutoff)?;
            let name = format!("{semigroup:?}");
            let text = format!(
                "{name} at β = {beta}: partial sum {:.12e} (cutoff {})\ndivergent {}; terms increase from {:?}; last ratio {:.4}",
                r.series.value, r.series.cutoff, r.series.divergent, r.growth.increasing_from, r.growth.last_ratio
            );
            let rows = r.coefficients.iter().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();
            Ok(Report::new(r.to_json(&name, beta), text).with_table(&["index", "count"], rows))
        }
        QsmCmd::Gibbs { mode, h, tau, beta, cutoff, tol } => {
            let tol = tolerance(tol)?;
            let r = gibbs(mode, &h, tau, beta, tol, cutoff)?;
            let text = format!(
                "{mode:?}-mode, h = {h}, τ = {tau}, β = {beta}\ndirect {:.15} (± {:.3e})\nclosed {:.15} (± {:.3e})\ngap    {:.3e}",
                r.direct.value,
                r.direct.tail_bound,
                r.closed.value,
                r.closed.tail_bound,
                r.gap()
            );
            let failed = mode == GibbsMode::N && r.gap() > r.direct.tail_bound + r.closed.tail_bound + tol;
            Ok(Report::new(r.to_json(), text).finding(failed))
        }
        QsmCmd::Kms { dessin, lambda, beta, words } => {
            let x = dessin.load()?;
            let phi = EdgeCount::new(parse_q(&lambda)?)?;
            let v = kms_state(&x, &phi, beta, words)?;
            let json = json!({
                "dessin": x.to_text(), "lambda": lambda, "beta": beta,
                "value": v.value, "deviation": v.deviation, "words": v.words, "normalization": v.normalization,
            });
            let text = format!("ψ = {:.15}\nψ − φ(D) = {:.6e} over {} words", v.value, v.deviation, v.words);
            Ok(Report::new(json, text))
        }
        QsmCmd::ThetaCensus { n, max_d, max_a, max_b } => {
            let field = ThetaField::new(n)?;
            let r = census(&field, max_d, max_a, max_b)?;
            let text = format!(
                "{} labels in {} eigenvalue groups (largest {})\ncoincidences outside the allowed cases: {}\npredicted partners that differ: {}",
                r.labels,
                r.groups.len(),
                r.max_group(),
                r.unexpected.len(),
                r.predicted_not_equal.len()
            );
            Ok(Report::new(r.to_json(), text).finding(!r.consistent()))
        }
        QsmCmd::ThetaZ { n, beta, cutoff, convention } => {
            let convention = match convention.as_str() {
                "shifted" => ZConvention::Shifted,
                "printed" => ZConvention::Printed,
                other => return Err(Error::Config(format!("unknown convention `{other}`"))),
            };
            let field = ThetaField::new(n)?;
            let r = z_extended(&field, beta, cutoff, convention)?;
            let text = format!(
                "Z(β = {beta}) ≈ {:.15} (tail ≤ {:.3e})\nmonotone partial sums with shrinking tails: {}",
                r.value,
                r.tail_bound,
                r.monotone()
            );
            let rows = r
                .partial_sums
                .iter()
                .zip(&r.block_tails)
                .enumerate()
                .map(|(i, (s, t))| vec![(i + 1).to_string(), s.to_string(), t.to_string()])
                .collect();
            Ok(Report::new(r.to_json(), text).with_table(&["degree", "partial_sum", "tail"], rows).finding(!r.monotone()))
        }
    }
}

fn run_bc(cmd: BcCmd) -> Result<Report> {
    match cmd {
        BcCmd::Mgt { n } => {
            let g = mgt_group(n)?;
            let text = format!("mGT_{n}: order {}\norbits {:?}", g.order(), g.orbits());
            Ok(Report::new(g.to_json(), text))
        }
        BcCmd::Tower { max } => {
            let r = check_tower(max);
            let json = json!({
                "max": r.max, "cases": r.cases,
                "involution_failures": r.involution_failures, "compatibility_failures": r.compatibility_failures,
            });
            let text = format!(
                "{} cases up to nm = {max}: {} involution failures, {} compatibility failures",
                r.cases, r.involution_failures, r.compatibility_failures
            );
            Ok(Report::new(json, text).finding(r.involution_failures + r.compatibility_failures > 0))
        }
    }
}

fn run_double(cmd: DoubleCmd) -> Result<Report> {
    match cmd {
        DoubleCmd::Verify { m, a, variant } => {
            let r = verify_axioms(m, a, variant)?;
            let text = format!(
                "D^ω(Z/{m}), a = {a}\ncocycle {}  pentagon {}  quasi-associativity {}  counit {}  R-conjugation {}\ninverses {}  unit {}{}",
                r.cocycle,
                r.pentagon,
                r.quasi_assoc,
                r.counit,
                r.r_conj,
                r.inverses,
                r.unit,
                r.counterexample.as_deref().map(|c| format!("\nfirst counterexample: {c}")).unwrap_or_default()
            );
            Ok(Report::new(r.to_json(), text).finding(!(r.cocycle && r.all_pass())))
        }
        DoubleCmd::System { n, m } => {
            let r = system_maps(n, m)?;
            let text = format!(
                "Z/{} → Z/{m}\npulled-back cocycles failing the identity: {}\nmatches with standard cocycles: {:?}\nρ̃ on the summation index sends R to R: {}\nρ̃ legwise sends R to R: {}",
                n * m,
                r.pullback_failures,
                r.pullback_matches,
                r.r_transport,
                r.r_transport_legwise
            );
            Ok(Report::new(r.to_json(), text).finding(r.pullback_failures > 0 || !r.r_transport))
        }
    }
}

fn run_verify(args: VerifyArgs, seed: u64) -> Result<Report> {
    let only = args.only.iter().map(|s| acceptance::resolve(s)).collect::<Result<Vec<_>>>()?;
    let r = acceptance::run(&only, seed)?;
    let mut text: Vec<String> = r.criteria.iter().map(|c| c.line()).collect();
    text.push(r.summary());
    let rows = r
        .criteria
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                c.name.to_string(),
                if c.passed { "PASS" } else { "FAIL" }.to_string(),
                format!("{:.3}", c.elapsed.as_secs_f64()),
                c.detail.clone(),
            ]
        })
        .collect();
    Ok(Report::new(r.to_json(), text.join("\n"))
        .with_table(&["id", "name", "result", "seconds", "detail"], rows)
        .finding(!r.failed_ids().is_empty()))
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Dessin(d) => Ok(dessin_report(&d.load()?)),
        Command::Enum(c) => run_enum(c),
        Command::Hopf(c) => run_hopf(c),
        Command::Poly(c) => run_poly(c),
        Command::Birkhoff(a) => run_birkhoff(a),
        Command::Compose(c) => run_compose(c),
        Command::Qsm(c) => run_qsm(c),
        Command::Bc(c) => run_bc(c),
        Command::Double(c) => run_double(c),
        Command::VerifyAll(a) => run_verify(a, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            report.emit(format);
            ExitCode::from(if report.finding { 3 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
