use std::time::Instant;

use coeff_ring::sample::{scalar, Shape};
use coeff_ring::TrigScalar;
use courant::{BaseData, CourantData, DecompRecord, Report, ResidualValue, Section};
use exterior::{bits, Form, Sig, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use spinor::{DiracOperator, Spinor};
use tdual::{catalog, dualize, par, verify_duality, Duality, DualityPackage};

use crate::input::{spinor_from, DataDoc, DiracInput, DualizeInput, RhoInput, SectionDoc, TauInput};
use crate::report::{digest, entries, NamedValue, RunReport, Timing};
use crate::{Cli, Command, Failure};

/// Sections checked by the randomized `ρ` sweep of `demo`.
const RHO_SWEEP: usize = 10;

/// The report of a run together with the artifact it produced, if any.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub artifact: Option<Value>,
}

/// State accumulated while a command runs.
struct Run {
    float: bool,
    seed: u64,
    residuals: Report,
    outputs: Vec<NamedValue>,
    timings: Vec<Timing>,
    artifact: Option<Value>,
}

impl Run {
    fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing {
            phase: phase.into(),
            micros: start.elapsed().as_micros() as u64,
        });
        out
    }

    fn output(&mut self, name: impl Into<String>, value: impl ToString) {
        self.outputs.push(NamedValue {
            name: name.into(),
            value: value.to_string(),
        });
    }

    fn residuals(&mut self, prefix: &str, rep: Report) {
        for r in rep.residuals {
            let name = if prefix.is_empty() { r.name } else { format!("{prefix}/{}", r.name) };
            self.residuals.push(name, r.value);
        }
    }

    fn artifact(&mut self, doc: &impl Serialize) {
        self.artifact = Some(serde_json::to_value(doc).expect("documents serialize"));
    }
}

/// Runs one command on the given input bytes.
pub fn run(cli: &Cli, input: &[u8]) -> Outcome {
    let start = Instant::now();
    let mut st = Run {
        float: cli.float,
        seed: cli.seed,
        residuals: Report::new(),
        outputs: Vec::new(),
        timings: Vec::new(),
        artifact: None,
    };
    let result = match &cli.command {
        Command::Check => check(&mut st, input),
        Command::Decompose => decompose(&mut st, input),
        Command::Dualize => dualize_cmd(&mut st, input),
        Command::Verify => verify(&mut st, input),
        Command::Dirac => dirac_cmd(&mut st, input),
        Command::Tau => tau_cmd(&mut st, input),
        Command::Rho => rho_cmd(&mut st, input),
        Command::Demo { name } => demo(&mut st, name),
    };
    let digest = match &cli.command {
        Command::Demo { name } => digest(name.as_bytes()),
        _ => digest(input),
    };
    let (exit_status, error) = match result {
        Ok(()) if st.residuals.all_zero() => (0, None),
        Ok(()) => (
            crate::EXIT_RESIDUAL,
            Some(format!("nonzero residuals: {}", st.residuals.nonzero().join(", "))),
        ),
        Err(e) => {
            let code = e.exit_code();
            let msg = e.to_string();
            if let Failure::Residuals(_, rep) = e {
                st.residuals("", rep);
            }
            (code, Some(msg))
        }
    };
    st.timings.push(Timing {
        phase: "total".into(),
        micros: start.elapsed().as_micros() as u64,
    });
    Outcome {
        report: RunReport {
            command: cli.command.name().into(),
            input_digest: digest,
            residuals: entries(&st.residuals, st.float),
            outputs: st.outputs,
            timings: st.timings,
            exit_status,
            error,
            artifact: None,
        },
        artifact: st.artifact,
    }
}

fn parse<T: DeserializeOwned>(input: &[u8]) -> Result<T, Failure> {
    serde_json::from_slice(input).map_err(Failure::parse)
}

fn check(st: &mut Run, input: &[u8]) -> Result<(), Failure> {
    let doc: DataDoc = parse(input)?;
    let data = st.timed("load", || doc.load())?;
    compatibility(st, "", &data);
    Ok(())
}

fn compatibility(st: &mut Run, prefix: &str, data: &CourantData) {
    let phase = if prefix.is_empty() { "compatibility".to_string() } else { format!("{prefix} compatibility") };
    let (a, b) = st.timed(&phase, || (data.check_compatibility(), data.check_action_compat()));
    st.residuals(prefix, a);
    st.residuals(prefix, b);
}

fn decompose(st: &mut Run, input: &[u8]) -> Result<(), Failure> {
    let doc: DataDoc = parse(input)?;
    let data = st.timed("load", || doc.load())?;
    let rec = st.timed("split", || DecompRecord::from_data(&data));
    let rep = st.timed("equations", || rec.check_equations());
    st.residuals("", rep);
    let pieces = pieces(&rec);
    for (name, value) in &pieces {
        st.output(name.clone(), value);
    }
    st.artifact(&pieces);
    Ok(())
}

/// The nonzero pieces of a decomposition, named by slot and 1-based fiber indices.
fn pieces(rec: &DecompRecord) -> Vec<(String, String)> {
    let k = rec.num_fibers();
    let mut out = Vec::new();
    let mut push = |name: String, zero: bool, value: String| {
        if !zero {
            out.push((name, value));
        }
    };
    push("h3".into(), rec.h3.is_zero(), rec.h3.to_string());
    push("r2".into(), rec.r2.is_zero(), rec.r2.to_string());
    push("omega-b".into(), rec.omega_b.is_zero(), rec.omega_b.to_string());
    for i in 0..k {
        push(format!("h2[{}]", i + 1), rec.h2[i].is_zero(), rec.h2[i].to_string());
        push(format!("r1[{}]", i + 1), rec.r1[i].is_zero(), rec.r1[i].to_string());
        push(format!("a[{}]", i + 1), rec.actions[i].is_zero(), rec.actions[i].to_string());
        for j in i + 1..k {
            let idx = format!("[{},{}]", i + 1, j + 1);
            push(format!("h1{idx}"), rec.h1[i][j].is_zero(), rec.h1[i][j].to_string());
            push(format!("r0{idx}"), rec.r0[i][j].is_zero(), rec.r0[i][j].to_string());
            for s in j + 1..k {
                let h = &rec.h0[i][j][s];
                push(format!("h0[{},{},{}]", i + 1, j + 1, s + 1), h.is_zero(), h.to_string());
            }
        }
    }
    out
}

fn dualize_cmd(st: &mut Run, input: &[u8]) -> Result<(), Failure> {
    let doc: DualizeInput = parse(input)?;
    let base = BaseData::from_doc(&doc.base).map_err(Failure::parse)?;
    let pkg = st.timed("dualize", || dualize(&base, doc.r_tilde.as_deref()))?;
    verify_package(st, &pkg)?;
    summarize(st, &pkg);
    st.artifact(&pkg.to_doc());
    Ok(())
}

fn verify(st: &mut Run, input: &[u8]) -> Result<(), Failure> {
    let doc: tdual::DualityPackageDoc = parse(input)?;
    let pkg = st.timed("load", || DualityPackage::from_doc(&doc))?;
    verify_package(st, &pkg)
}

fn verify_package(st: &mut Run, pkg: &DualityPackage) -> Result<(), Failure> {
    let rep = st.timed("verify", || verify_duality(pkg))?;
    st.output("determinant", &rep.determinant);
    st.residuals("", rep.residuals);
    Ok(())
}

/// The dual curvatures with their mean coefficients, and the dual flux.
fn summarize(st: &mut Run, pkg: &DualityPackage) {
    let sig = pkg.dual.sig().clone();
    for (i, k) in pkg.k_forms().iter().enumerate() {
        st.output(format!("dual curvature {}", i + 1), k);
        let coefficients: Vec<String> = k
            .terms()
            .iter()
            .filter_map(|(m, f)| {
                let c = f.harmonic_part().ok()?;
                (!num_is_zero(&c)).then(|| format!("{}: {c}", word(&sig, *m)))
            })
            .collect();
        st.output(format!("dual curvature {} harmonic", i + 1), coefficients.join(", "));
    }
    st.output("dual flux", pkg.dual.h());
}

fn num_is_zero(c: &coeff_ring::Q) -> bool {
    *c.numer() == 0.into()
}

fn word(sig: &Sig, mask: u64) -> String {
    bits(mask).map(|g| sig.gen_name(g)).collect::<Vec<_>>().join("∧")
}

fn dirac_cmd(st: &mut Run, input: &[u8]) -> Result<(), Failure> {
    let doc: DiracInput = parse(input)?;
    let data = st.timed("load", || doc.data.load())?;
    let s = spinor_from(&data, &doc.spinor)?;
    let out = st.timed("dirac", || DiracOperator::new(&data).apply(&s));
    st.artifact(&out.to_entries());
    Ok(())
}

fn tau_cmd(st: &mut Run, input: &[u8]) -> Result<(), Failure> {
    let doc: TauInput = parse(input)?;
    let duality = st.timed("load", || -> Result<Duality, Failure> {
        Ok(Duality::new(DualityPackage::from_doc(&doc.package)?)?)
    })?;
    let src = &duality.package().source;
    let s = spinor_from(src, &doc.spinor)?;
    let ts = st.timed("tau", || duality.tau(&s))?;
    let residual = st.timed("intertwining", || -> Result<Spinor, Failure> {
        let lhs = duality.tau(&duality.source_dirac().apply(&s))?;
        Ok(lhs.sub(&duality.dual_dirac().apply(&ts)))
    })?;
    st.residuals.push("dirac", spinor_residual(&residual));
    st.artifact(&ts.to_entries());
    Ok(())
}

fn spinor_residual(s: &Spinor) -> ResidualValue {
    ResidualValue::GForm(courant::GForm::from_comps(s.sig(), s.comps().to_vec()))
}

fn rho_cmd(st: &mut Run, input: &[u8]) -> Result<(), Failure> {
    let doc: RhoInput = parse(input)?;
    let duality = st.timed("load", || -> Result<Duality, Failure> {
        Ok(Duality::new(DualityPackage::from_doc(&doc.package)?)?)
    })?;
    let pkg = duality.package();
    let u = doc.section.to_section(pkg.source.sig(), pkg.source.algebra().dim())?;
    let ru = st.timed("rho", || duality.rho(&u))?;
    let pairing = pkg.dual.pair(&ru, &ru).sub(&pkg.source.pair(&u, &u));
    st.residuals.push("pairing", ResidualValue::Scalar(pairing));
    st.artifact(&SectionDoc::from_section(&ru));
    Ok(())
}

fn demo(st: &mut Run, name: &str) -> Result<(), Failure> {
    let (base, r_tilde) = catalog::example(name)
        .ok_or_else(|| Failure::Parse(format!("unknown example {name}; expected one of {}", catalog::NAMES.join(", "))))?;
    let pkg = st.timed("dualize", || dualize(&base, Some(&r_tilde)))?;
    compatibility(st, "source", &pkg.source);
    compatibility(st, "dual", &pkg.dual);
    verify_package(st, &pkg)?;
    summarize(st, &pkg);
    let duality = Duality::new(pkg.clone())?;

    let spanning = Spinor::spanning_set(pkg.source.sig(), pkg.source.algebra());
    st.output("spanning set", spanning.len());
    let rep = st.timed("tau", || -> Result<Report, Failure> {
        let residuals = par::map(&spanning, |s| -> Result<Spinor, Failure> {
            let lhs = duality.tau(&duality.source_dirac().apply(s))?;
            Ok(lhs.sub(&duality.dual_dirac().apply(&duality.tau(s)?)))
        });
        let mut first = None;
        for r in residuals {
            let r = r?;
            if first.is_none() && !r.is_zero() {
                first = Some(r);
            }
        }
        let mut rep = Report::new();
        let residual = first.unwrap_or_else(|| Spinor::zero(pkg.source.sig(), pkg.source.algebra()));
        rep.push("dirac", spinor_residual(&residual));
        Ok(rep)
    })?;
    st.residuals("intertwining", rep);

    let seed = st.seed;
    let rep = st.timed("rho", || rho_sweep(&duality, seed))?;
    st.residuals("rho", rep);
    st.artifact(&pkg.to_doc());
    Ok(())
}

fn random_section(rng: &mut ChaCha8Rng, sig: &Sig, n: usize) -> Section {
    let dim = sig.base_dim();
    let shape = Shape {
        max_freq: 1,
        modes: 1,
        tau_degree: 0,
    };
    let sample = |rng: &mut ChaCha8Rng| scalar(rng, dim, shape);
    let mut xi = Form::zero(sig);
    let mut x = VectorField::zero(sig);
    for g in 0..sig.num_gens() {
        if rng.gen_bool(0.5) {
            xi.add_term(1 << g, sample(rng));
        }
        if rng.gen_bool(0.5) {
            x.set_comp(g, sample(rng));
        }
    }
    let r = (0..n)
        .map(|_| if rng.gen_bool(0.5) { sample(rng) } else { TrigScalar::zero(dim) })
        .collect();
    Section { xi, r, x }
}

/// Pairing and bracket preservation of `ρ` on seeded random sections.
/// Each residual is the first nonzero one found, or zero.
fn rho_sweep(duality: &Duality, seed: u64) -> Result<Report, Failure> {
    let pkg = duality.package();
    let (src, dual) = (&pkg.source, &pkg.dual);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = src.algebra().dim();
    let pairs: Vec<(Section, Section)> = (0..RHO_SWEEP)
        .map(|_| (random_section(&mut rng, src.sig(), n), random_section(&mut rng, src.sig(), n)))
        .collect();
    let results = par::map(&pairs, |(u, v)| -> Result<(TrigScalar, Section), Failure> {
        let (ru, rv) = (duality.rho(u)?, duality.rho(v)?);
        let pairing = dual.pair(&ru, &rv).sub(&src.pair(u, v));
        let bracket = duality.rho(&src.dorfman(u, v))?.sub(&dual.dorfman(&ru, &rv));
        Ok((pairing, bracket))
    });
    let mut pairing = TrigScalar::zero(src.sig().base_dim());
    let mut bracket = Section::zero(dual.sig(), n);
    for r in results {
        let (p, b) = r?;
        if pairing.is_zero() {
            pairing = p;
        }
        if bracket.is_zero() {
            bracket = b;
        }
    }
    let mut rep = Report::new();
    rep.push("pairing", ResidualValue::Scalar(pairing));
    rep.push("bracket", ResidualValue::Form(bracket.xi.clone()));
    rep.push("bracket-algebra", ResidualValue::Scalars(bracket.r.clone()));
    rep.push("bracket-vector", ResidualValue::Scalars(bracket.x.comps().to_vec()));
    Ok(rep)
}
