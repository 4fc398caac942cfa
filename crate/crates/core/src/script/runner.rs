use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::parser::{self, Binding, SessionScript};
use crate::error::{Error, Result};
use crate::flatness::{
    has_no_embedded_components, is_flat_over_germ, is_internally_flat, FlatnessReport,
};
use crate::groebner::GbOptions;
use crate::ideal::Ideal;
use crate::ideal_ops::{
    build_test_ideal, colon, dimension, eliminate, height, intersect, saturate, TestIdeal,
};
use crate::normal_cone::{
    cone_fiber_compare, hypersurface_ts_generators, tangent_star_ideal, FiberOutcome,
};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::resolution::{free_resolution, is_cohen_macaulay};
use crate::segre::{coalescence_check, s0_tangent_star};

/// Every command understood by [`run`].
pub const COMMANDS: &[&str] = &[
    "gb",
    "nf",
    "colon",
    "intersect",
    "saturate",
    "eliminate",
    "dim",
    "tangent-star",
    "smf",
    "s0",
    "coalesce",
    "embedded",
    "flat",
    "internal-flat",
    "fiber-compare",
    "pd",
    "cm",
    "verdict",
];

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub order: Option<MonomialOrder>,
    pub param: Option<String>,
    /// Source of a test ideal: a generator list or a script binding `J`.
    pub test_ideal: Option<String>,
    pub seed: Option<u64>,
    pub saturate: bool,
    pub verify: bool,
    pub max_pairs: Option<usize>,
}

/// Outcome of one command. Polynomials are rendered in canonical term order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub verdict: Option<bool>,
    pub witness: Option<String>,
    pub gb_size: Option<usize>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
    pub output: Vec<String>,
    pub values: BTreeMap<String, Value>,
    pub elapsed_ms: f64,
}

impl Report {
    /// 0 unless the verdict is false.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    /// The report without timing, for comparisons across runs.
    pub fn without_timing(&self) -> Report {
        Report {
            elapsed_ms: 0.0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text rendering for the terminal.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, self.args.join(" "));
        if let Some(v) = self.verdict {
            let _ = writeln!(s, "verdict: {v}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {w}");
        }
        for o in &self.output {
            let _ = writeln!(s, "  {o}");
        }
        for (k, v) in &self.values {
            let _ = writeln!(s, "{k}: {v}");
        }
        if let Some(n) = self.gb_size {
            let _ = writeln!(s, "gb size: {n}");
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

/// Process exit code for a failed command.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceExhausted(_) => 3,
        _ => 2,
    }
}

/// A script holding the single polynomial `f`, with the ring read off the
/// expression. A parameter that does not occur is appended to the ring.
pub fn script_from_poly(text: &str, param: Option<&str>) -> Result<SessionScript> {
    let mut names = parser::identifiers(text)?;
    if let Some(p) = param {
        if !names.iter().any(|n| n == p) {
            names.push(p.to_string());
        }
    }
    if names.is_empty() {
        names.push("x".into());
    }
    let ring = PolyRing::new(&names, param, &[] as &[&str], MonomialOrder::default())?;
    let f = parser::parse_poly(&ring, text)?;
    Ok(SessionScript {
        ring,
        bindings: vec![("f".to_string(), Binding::Poly(f))],
        command: None,
    })
}

/// Parses `source` and runs `command` on it.
pub fn run_source(command: &str, source: &str, opts: &RunOptions) -> Result<Report> {
    run(command, &parser::parse(source)?, opts)
}

struct Ctx<'a> {
    script: SessionScript,
    opts: &'a RunOptions,
    gb: GbOptions,
}

impl Ctx<'_> {
    fn ring(&self) -> &Arc<PolyRing> {
        &self.script.ring
    }

    fn ideal(&self, name: &str) -> Result<Ideal> {
        let gens = match self.script.get(name) {
            Some(Binding::Ideal(g)) => g.clone(),
            Some(Binding::Poly(p)) => vec![p.clone()],
            None => return Err(Error::InvalidArgument(format!("no ideal named `{name}`"))),
        };
        Ok(Ideal::new(self.ring(), gens)?.with_options(self.gb.clone()))
    }

    fn poly(&self, name: &str) -> Result<Polynomial> {
        self.script
            .poly(name)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no polynomial named `{name}`")))
    }

    fn test_ideal(
        &self,
        i: &Ideal,
        name: Option<&String>,
        report: &mut Report,
    ) -> Result<TestIdeal> {
        if let Some(n) = name.filter(|n| self.script.get(n).is_some()) {
            return TestIdeal::validate(i, &self.ideal(n)?);
        }
        if let Some(src) = &self.opts.test_ideal {
            let gens = match parser::parse(src) {
                Ok(s) if s.ideal("J").is_some() => {
                    s.rebase(self.ring())?.ideal("J").unwrap().to_vec()
                }
                _ => parser::parse_poly_list(self.ring(), src.trim().trim_end_matches(';'))?,
            };
            return TestIdeal::validate(i, &i.derive(gens)?);
        }
        let seed = self.opts.seed.unwrap_or(0);
        report.seed = Some(seed);
        build_test_ideal(i, seed)
    }
}

fn render(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn flatness_into(report: &mut Report, i: &Ideal, r: FlatnessReport) -> Result<()> {
    if !r.witness_is_valid(i)? {
        return Err(Error::Inconsistent(
            "flatness witness failed validation".into(),
        ));
    }
    report.verdict = Some(r.verdict);
    report.witness = r.witness.as_ref().map(ToString::to_string);
    report.notes.extend(r.hypothesis_notes);
    if let Some(j) = &r.test_ideal_used {
        report
            .values
            .insert("test_ideal".into(), json!(render(j.generators())));
    }
    if let Some(v) = r.saturated_verdict {
        report.values.insert("saturated_verdict".into(), json!(v));
    }
    report.output = render(r.tested.generators());
    Ok(())
}

/// Runs `command` on a parsed script. Arguments come from the script's own
/// command statement when it names the same command, and otherwise default
/// to the bindings `I`, `J` and `f`.
pub fn run(command: &str, script: &SessionScript, opts: &RunOptions) -> Result<Report> {
    if !COMMANDS.contains(&command) {
        return Err(Error::InvalidArgument(format!(
            "unknown command `{command}`"
        )));
    }
    let start = Instant::now();
    let mut ring = script.ring.clone();
    if let Some(p) = &opts.param {
        ring = ring.with_param(Some(p))?;
    }
    if let Some(o) = &opts.order {
        ring = ring.with_order(o.clone());
    }
    let mut gb = GbOptions::default();
    if let Some(m) = opts.max_pairs {
        gb.max_pairs = m;
    }
    let ctx = Ctx {
        script: script.rebase(&ring)?,
        opts,
        gb,
    };
    let args: Vec<String> = match &script.command {
        Some(c) if c.name == command => c.args.clone(),
        _ => Vec::new(),
    };
    let arg = |k: usize, default: &str| args.get(k).cloned().unwrap_or_else(|| default.to_string());
    let mut report = Report {
        command: command.to_string(),
        args: args.clone(),
        ..Report::default()
    };
    match command {
        "gb" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let g = i.gb()?;
            report.output = render(g.elements());
            report.gb_size = Some(g.len());
            report.values.insert("stats".into(), json!(g.stats()));
            report
                .values
                .insert("order".into(), json!(ring.order().name()));
        }
        "nf" => {
            let f = ctx.poly(&arg(0, "f"))?;
            let i = ctx.ideal(&arg(1, "I"))?;
            let r = i.normal_form(&f)?;
            report.values.insert("member".into(), json!(r.is_zero()));
            report.output = vec![r.to_string()];
            report.gb_size = Some(i.gb()?.len());
        }
        "colon" | "intersect" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let j = ctx.ideal(&arg(1, "J"))?;
            let r = if command == "colon" {
                colon(&i, &j)?
            } else {
                intersect(&i, &j)?.reduced()?
            };
            report.output = render(r.generators());
            report.gb_size = Some(r.generators().len());
        }
        "saturate" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let f = ctx.poly(&arg(1, "f"))?;
            let r = saturate(&i, &f)?.reduced()?;
            report.output = render(r.generators());
            report.gb_size = Some(r.generators().len());
        }
        "eliminate" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            if args.len() < 2 {
                return Err(Error::InvalidArgument(
                    "eliminate needs the variables to remove, e.g. `eliminate I t;`".into(),
                ));
            }
            let vars = args[1..]
                .iter()
                .map(|v| ring.var_index(v))
                .collect::<Result<Vec<_>>>()?;
            let r = eliminate(&i, &vars)?.reduced()?;
            report.output = render(r.generators());
            report.gb_size = Some(r.generators().len());
        }
        "dim" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            report
                .values
                .insert("dimension".into(), json!(dimension(&i)?));
            report.values.insert("height".into(), json!(height(&i)?));
            report
                .values
                .insert("variables".into(), json!(ring.nvars()));
            report.gb_size = Some(i.gb()?.len());
        }
        "tangent-star" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let c = tangent_star_ideal(&i)?;
            report.output = render(c.ideal.generators());
            report.gb_size = Some(c.ideal.generators().len());
            report
                .values
                .insert("ring".into(), json!(format!("{:?}", c.ring)));
        }
        "smf" => {
            let f = ctx.poly(&arg(0, "f"))?;
            let tr = ring.tangent_ring()?;
            let gens = hypersurface_ts_generators(&f.map_into(&tr)?)?;
            report.output = render(&gens);
            report
                .values
                .insert("ring".into(), json!(format!("{tr:?}")));
        }
        "s0" => {
            let f = ctx.poly(&arg(0, "f"))?;
            let c = s0_tangent_star(&f)?;
            report.output = vec![c.to_string()];
            let terms: Vec<Value> = c
                .terms
                .iter()
                .map(|(w, g)| json!([w, g.to_string()]))
                .collect();
            report.values.insert("terms".into(), json!(terms));
        }
        "coalesce" => {
            let f = ctx.poly(&arg(0, "f"))?;
            let r = coalescence_check(&f)?;
            report.verdict = Some(r.verdict);
            report.witness = r.certificate.as_ref().map(ToString::to_string);
            if let Some(c) = r.failing_criterion {
                report
                    .values
                    .insert("failing_criterion".into(), json!(c as u8));
            }
            report.output = r.classes.iter().map(|(m, g)| format!("{m}: {g}")).collect();
        }
        "embedded" | "internal-flat" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let jname = args.get(1).cloned().unwrap_or_else(|| "J".to_string());
            let j = ctx.test_ideal(&i, Some(&jname), &mut report)?;
            let r = if command == "embedded" {
                has_no_embedded_components(&i, &j)?
            } else {
                is_internally_flat(&i, &j, opts.saturate)?
            };
            flatness_into(&mut report, &i, r)?;
        }
        "flat" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            flatness_into(&mut report, &i, is_flat_over_germ(&i)?)?;
        }
        "fiber-compare" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let c = tangent_star_ideal(&i)?;
            let r = cone_fiber_compare(&c, &i)?;
            report.verdict = Some(r.outcome == FiberOutcome::Equal);
            report.witness = r.certificate.as_ref().map(ToString::to_string);
            report.values.insert("outcome".into(), json!(r.outcome));
            report.output = render(r.cone_fiber.reduced()?.generators());
        }
        "pd" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let r = free_resolution(&i)?;
            report.values.insert("pd".into(), json!(r.length()));
            report.values.insert("ranks".into(), json!(r.ranks));
            report.values.insert("graded".into(), json!(r.graded));
            if r.graded {
                let table: Vec<Value> = r
                    .betti_table()
                    .iter()
                    .map(|((i, d), n)| json!([i, d, n]))
                    .collect();
                report.values.insert("betti".into(), json!(table));
            } else {
                report
                    .notes
                    .push("input is not graded; pd is an upper bound".into());
            }
            report.output = vec![r.to_string()];
        }
        "cm" => {
            let i = ctx.ideal(&arg(0, "I"))?;
            let r = is_cohen_macaulay(&i)?;
            report.verdict = r.verdict;
            if r.verdict == Some(false) {
                report.witness = Some(format!("pd {} != height {}", r.pd, r.height));
            }
            if r.pd_is_bound {
                report.notes.push(
                    "input is not graded; verdict indeterminate, pd is an upper bound".into(),
                );
            }
            report.values.insert("pd".into(), json!(r.pd));
            report.values.insert("height".into(), json!(r.height));
            report.values.insert("ranks".into(), json!(r.betti));
        }
        "verdict" => verdict(&ctx, &arg(0, "f"), &mut report)?,
        _ => unreachable!(),
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Hypersurface pipeline: when the components of `V(f)` do not coalesce
/// at `t = 0`, the relative tangent star cone is flat over the base.
fn verdict(ctx: &Ctx<'_>, name: &str, report: &mut Report) -> Result<()> {
    let f = ctx.poly(name)?;
    let r = coalescence_check(&f)?;
    report.verdict = Some(r.verdict);
    report.witness = r.certificate.as_ref().map(ToString::to_string);
    if r.verdict {
        report.notes.push(
            "components do not coalesce at t = 0, so TS(X/T) is flat over T and s0 specializes"
                .into(),
        );
    } else {
        report.notes.push(format!(
            "coalescence criterion ({}) fails; flatness of TS(X/T) is not concluded",
            r.failing_criterion.map(|c| c as u8).unwrap_or(0)
        ));
    }
    if ctx.opts.verify {
        let i = Ideal::principal(&f).with_options(ctx.gb.clone());
        let cone = tangent_star_ideal(&i)?;
        let flat = is_flat_over_germ(&cone.ideal)?.verdict;
        let fiber = cone_fiber_compare(&cone, &i)?.outcome == FiberOutcome::Equal;
        report.values.insert("verify_cone_flat".into(), json!(flat));
        report
            .values
            .insert("verify_fiber_equal".into(), json!(fiber));
        report.output = render(cone.ideal.generators());
        if r.verdict && !(flat && fiber) {
            return Err(Error::Inconsistent(
                "non-coalescing family whose tangent star cone failed the direct check".into(),
            ));
        }
        report.notes.push(if flat && fiber {
            "direct computation confirms: I_cone : t = I_cone and the fibers agree".into()
        } else {
            "direct computation: the cone is not flat or its special fiber differs".into()
        });
    }
    Ok(())
}
