use std::path::Path;
use std::sync::Arc;

use monocat::algcore::Algebra;
use monocat::approx::rmon;
use monocat::cotilt::{
    build_mtilt, identity_check, is_cotilting, is_tilting, perp_left, perp_right, reciprocity_check, Catalog,
    ComparisonReport, IdentityId, PerpMode,
};
use monocat::fintype::{
    catalog_sum, end_algebra, enumerate_module_indecomposables, enumerate_mor_indecomposables,
    enumerate_sn_indecomposables, finite_type_check, global_dimension,
};
use monocat::fixtures::{algebra_by_name, ka2, ka2_mor2_catalog, lambda, KA2_MOR2_PROJECTIVES};
use monocat::goren::{gproj_membership, gproj_sn_check, profile};
use monocat::io::{
    algebra_from_json, algebra_to_json, catalog_from_json, catalog_to_json, matrix_to_json, module_from_json,
    module_to_json, mor_from_json, mor_to_json, parse_json,
};
use monocat::modrep::{direct_sum, fitting_decompose, named_module, DimBound, Module};
use monocat::morcat::{fn_membership, mor_decompose, sn_membership, MorObject, SubcatSpec};
use monocat::{selftest, Caps, Error, Result};
use serde_json::{json, Value};

use crate::report::{Report, Status};

/// A module or a chain read from the command line.
pub enum Object {
    Module(Module),
    Chain(MorObject),
}

impl Object {
    pub fn flat(&self) -> Result<Module> {
        match self {
            Object::Module(m) => Ok(m.clone()),
            Object::Chain(x) => x.flat(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Object::Module(m) => module_to_json(m),
            Object::Chain(x) => mor_to_json(x),
        }
    }
}

pub struct Ctx {
    pub algebra: Option<String>,
    pub caps: Caps,
    pub seed: u64,
    resolved: Option<Arc<Algebra>>,
}

fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
    parse_json(&text)
}

fn resolve_algebra_arg(s: &str) -> Result<Arc<Algebra>> {
    if Path::new(s).is_file() {
        return algebra_from_json(&read_json(s)?);
    }
    algebra_by_name(s).ok_or_else(|| Error::input(format!("unknown algebra {s:?}: not a file or a bundled name")))
}

impl Ctx {
    pub fn new(algebra: Option<String>, caps: Caps, seed: u64) -> Ctx {
        Ctx { algebra, caps, seed, resolved: None }
    }

    /// The `--algebra` argument, or else the algebra named in `hint`.
    fn algebra(&mut self, hint: Option<&Value>) -> Result<Arc<Algebra>> {
        if let Some(a) = &self.resolved {
            return Ok(a.clone());
        }
        let a = match (&self.algebra, hint.and_then(|v| v.get("algebra")).and_then(Value::as_str)) {
            (Some(s), _) => resolve_algebra_arg(s)?,
            (None, Some(name)) => algebra_by_name(name)
                .ok_or_else(|| Error::input(format!("input names algebra {name:?}; pass --algebra with its file")))?,
            (None, None) => return Err(Error::input("no algebra given; pass --algebra")),
        };
        self.resolved = Some(a.clone());
        Ok(a)
    }

    /// A file path, a module name such as `P(1)`, or a sum `S(1)+S(2)`.
    fn object(&mut self, arg: &str) -> Result<Object> {
        if Path::new(arg).is_file() {
            let v = read_json(arg)?;
            let a = self.algebra(Some(&v))?;
            return if v.get("branches").is_some() {
                Ok(Object::Chain(mor_from_json(&a, &v)?))
            } else {
                Ok(Object::Module(module_from_json(&a, &v)?))
            };
        }
        let a = self.algebra(None)?;
        let parts = arg.split('+').map(|p| named_module(&a, p)).collect::<Result<Vec<_>>>()?;
        Ok(Object::Module(if parts.len() == 1 { parts[0].clone() } else { direct_sum(&a, &parts)?.module }))
    }

    fn module(&mut self, arg: &str) -> Result<Module> {
        match self.object(arg)? {
            Object::Module(m) => Ok(m),
            Object::Chain(_) => Err(Error::input(format!("{arg}: expected a module, got a chain"))),
        }
    }

    fn chain(&mut self, arg: &str) -> Result<MorObject> {
        match self.object(arg)? {
            Object::Chain(x) => Ok(x),
            Object::Module(_) => Err(Error::input(format!("{arg}: expected a chain"))),
        }
    }

    fn catalog(&mut self, path: &str) -> Result<Catalog> {
        let v = read_json(path)?;
        let a = self.algebra(Some(&v))?;
        let c = catalog_from_json(&a, &v)?;
        c.validate(self.seed).map_err(|e| Error::input(format!("{path}: {e}")))?;
        Ok(c)
    }
}

fn dim_text(d: DimBound) -> Value {
    match d {
        DimBound::Finite(k) => json!(k),
        DimBound::ExceedsCap => json!("exceeds cap"),
    }
}

/// Witness and data for a two-sided comparison over a catalog.
fn comparison(c: &Catalog, r: &ComparisonReport, lhs: &str, rhs: &str) -> (Option<Value>, Value, Vec<String>) {
    let witness = r.disagreements.first().map(|&k| {
        let row = &r.rows[k];
        json!({
            "index": k,
            "name": c.names[k],
            lhs: row.lhs,
            rhs: row.rhs,
            "object": mor_to_json(&c.objects[k]),
        })
    });
    let rows: Vec<Value> =
        r.rows.iter().map(|row| json!({ "index": row.index, "name": row.name, lhs: row.lhs, rhs: row.rhs })).collect();
    let names = |idx: Vec<usize>| idx.into_iter().map(|k| c.names[k].clone()).collect::<Vec<_>>();
    let data = json!({
        "equal": r.equal,
        "rows": rows,
        "disagreements": r.disagreements,
        "lhs_members": names(r.lhs_members()),
        "rhs_members": names(r.rhs_members()),
    });
    let lines = vec![
        format!("{lhs}: {}", names(r.lhs_members()).join(" ")),
        format!("{rhs}: {}", names(r.rhs_members()).join(" ")),
    ];
    (witness, data, lines)
}

pub fn rmon_cmd(ctx: &mut Ctx, object: &str) -> Result<Report> {
    let x = ctx.chain(object)?;
    let r = rmon(&x)?;
    let data = json!({
        "output": mor_to_json(&r.output),
        "counit": r.counit.components.iter().map(|c| matrix_to_json(&c.matrix)).collect::<Vec<_>>(),
        "kernel": mor_to_json(&r.kernel),
    });
    Ok(Report::new(Status::Holds, format!("rMon of a chain with dims {:?}", x.dims()))
        .with_data(data)
        .with_lines(vec![format!("output dims {:?}, kernel dims {:?}", r.output.dims(), r.kernel.dims())]))
}

pub fn check_sn(ctx: &mut Ctx, object: &str, left: Option<&str>, right: Option<&str>, epi: bool) -> Result<Report> {
    let x = ctx.chain(object)?;
    let spec = match (left, right) {
        (Some(t), None) => SubcatSpec::PerpLeft(ctx.module(t)?),
        (None, Some(t)) => SubcatSpec::PerpRight(ctx.module(t)?),
        (None, None) => SubcatSpec::All,
        _ => return Err(Error::input("give at most one of --perp-left, --perp-right")),
    };
    let compiled = spec.compile(ctx.caps, ctx.seed)?;
    let m = if epi { fn_membership(&x, &compiled)? } else { sn_membership(&x, &compiled)? };
    let cat = if epi { "F_n" } else { "S_n" };
    let summary = format!("{} {cat}", if m.member { "in" } else { "not in" });
    Ok(Report::new(Status::of(m.member), summary)
        .with_witness(m.witness.map(|w| json!({ "reason": w })))
        .with_data(json!({ "member": m.member })))
}

pub fn perp(ctx: &mut Ctx, object: &str, t: &str, right: bool, bound: Option<usize>) -> Result<Report> {
    let x = ctx.object(object)?;
    let tm = ctx.object(t)?.flat()?;
    let mode = bound.map_or(PerpMode::Auto, PerpMode::Bounded);
    let fx = x.flat()?;
    let member =
        if right { perp_right(&fx, &tm, mode, ctx.caps.res)? } else { perp_left(&fx, &tm, mode, ctx.caps.res)? };
    let side = if right { "T^perp" } else { "^perp T" };
    let witness = (!member).then(|| json!({ "object": x.to_json() }));
    Ok(Report::new(Status::of(member), format!("{} {side}", if member { "in" } else { "not in" }))
        .with_witness(witness)
        .with_data(json!({ "member": member })))
}

pub fn cotilt(ctx: &mut Ctx, t: &str, tilting: bool, n: Option<usize>) -> Result<Report> {
    let tm = ctx.module(t)?;
    if let Some(n) = n {
        let c = build_mtilt(&tm, n, ctx.caps, ctx.seed)?;
        let data = json!({
            "inj_dim": dim_text(c.inj_dim),
            "self_orthogonal": c.self_orthogonal,
            "coresolution_ok": c.coresolution_ok,
            "coresolution_terms": c.coresolution.terms.iter().map(Module::dim).collect::<Vec<_>>(),
            "end_dim": c.end_dim,
            "end_dim_expected": c.end_dim_expected,
            "object": mor_to_json(&c.object),
        });
        let lines = vec![
            format!("inj.dim m(T) = {}", c.inj_dim),
            format!("coresolution term dims {:?}", c.coresolution.terms.iter().map(Module::dim).collect::<Vec<_>>()),
            format!("dim End = {} (expected {})", c.end_dim, c.end_dim_expected),
        ];
        let witness = (!c.holds).then(|| data.clone());
        return Ok(Report::new(
            Status::of(c.holds),
            format!("m(T) over T_{n} {} cotilting", if c.holds { "is" } else { "is not" }),
        )
        .with_data(data)
        .with_witness(witness)
        .with_lines(lines));
    }
    let v = if tilting {
        is_tilting(&tm, ctx.caps.depth, ctx.caps, ctx.seed)?
    } else {
        is_cotilting(&tm, ctx.caps.depth, ctx.caps, ctx.seed)?
    };
    let kind = if tilting { "tilting" } else { "cotilting" };
    let data = json!({
        "dim": dim_text(v.dim),
        "self_orthogonal": v.self_orthogonal,
        "coresolution_terms": v.coresolution.as_ref().map(|c| c.terms.iter().map(Module::dim).collect::<Vec<_>>()),
    });
    Ok(Report::new(Status::of(v.holds), format!("T {} {kind}", if v.holds { "is" } else { "is not" }))
        .with_witness(v.failure.map(|f| json!({ "reason": f })))
        .with_data(data))
}

pub fn reciprocity(ctx: &mut Ctx, t: &str, n: usize, catalog: &str) -> Result<Report> {
    let c = ctx.catalog(catalog)?;
    let tm = ctx.module(t)?;
    let r = reciprocity_check(&tm, n, &c, ctx.caps, ctx.seed)?;
    let (w, data, lines) = comparison(&c, &r, "S_n(perp T)", "perp m(T)");
    Ok(Report::new(
        Status::of(r.equal),
        if r.equal { "S_n(^perp T) = ^perp m(T)" } else { "S_n(^perp T) != ^perp m(T)" },
    )
    .with_witness(w)
    .with_data(data)
    .with_lines(lines))
}

pub fn identity(ctx: &mut Ctx, id: &str, t: Option<&str>, n: usize, catalog: &str) -> Result<Report> {
    let id = IdentityId::parse(id)?;
    let c = ctx.catalog(catalog)?;
    let tm = match t {
        Some(t) => ctx.module(t)?,
        None => monocat::modrep::regular_module(&c.algebra),
    };
    let r = identity_check(id, &tm, n, &c, ctx.caps, ctx.seed)?;
    let (w, mut data, lines) = comparison(&c, &r.comparison, "lhs", "rhs");
    data["hypothesis"] = json!(r.hypothesis);
    data["side_condition"] = json!(r.side_condition);
    let w = w.or_else(|| (!r.holds).then(|| json!({ "reason": "side condition fails" })));
    Ok(Report::new(Status::of(r.holds), format!("{} {}", r.identity, if r.holds { "holds" } else { "fails" }))
        .with_witness(w)
        .with_data(data)
        .with_lines(lines))
}

pub fn profile_cmd(ctx: &mut Ctx) -> Result<Report> {
    let a = ctx.algebra(None)?;
    let p = profile(&a, ctx.caps.res)?;
    let data = serde_json::to_value(&p).expect("profile serializes");
    Ok(Report::new(
        Status::Holds,
        format!(
            "{}: inj.dim left {}, right {}, Gorenstein {}, self-injective {}",
            p.algebra, p.left_selfinj_dim, p.right_selfinj_dim, p.is_gorenstein, p.is_selfinjective
        ),
    )
    .with_data(data))
}

pub fn gproj(ctx: &mut Ctx, object: &str) -> Result<Report> {
    let x = ctx.object(object)?;
    let member = gproj_membership(&x.flat()?, ctx.caps.res)?;
    let witness = (!member).then(|| json!({ "object": x.to_json() }));
    Ok(Report::new(Status::of(member), if member { "Gorenstein-projective" } else { "not Gorenstein-projective" })
        .with_witness(witness)
        .with_data(json!({ "member": member })))
}

pub fn gproj_sn(ctx: &mut Ctx, n: usize, catalog: &str) -> Result<Report> {
    let c = ctx.catalog(catalog)?;
    let r = gproj_sn_check(&c.algebra, n, &c, ctx.caps, ctx.seed)?;
    let (w, mut data, lines) = comparison(&c, &r.comparison, "Gproj", "S_n");
    data["profile"] = serde_json::to_value(&r.profile).expect("profile serializes");
    data["dual_top_gproj"] = json!(r.dual_top_gproj);
    let summary = format!(
        "self-injective {}, Gproj = S_n {}, (D(A),0,...,0) Gorenstein-projective {}",
        r.profile.is_selfinjective, r.comparison.equal, r.dual_top_gproj
    );
    // the theorem holds when both sides agree; the witness then shows the inequality
    let witness = if r.holds { None } else { w };
    let mut report = Report::new(Status::of(r.holds), summary).with_witness(witness).with_data(data).with_lines(lines);
    if r.holds && !r.comparison.equal {
        report.lines.push(format!("S_n objects outside Gproj: {:?}", r.comparison.disagreements));
    }
    Ok(report)
}

pub fn endalg(ctx: &mut Ctx, object: &str) -> Result<Report> {
    let m = ctx.object(object)?.flat()?;
    let e = end_algebra(&m)?;
    Ok(Report::new(Status::Holds, format!("dim End(M) = {}", e.algebra.dim())).with_data(algebra_to_json(&e.algebra)))
}

pub fn gldim(ctx: &mut Ctx, of_end: Option<&str>) -> Result<Report> {
    let a = match of_end {
        Some(m) => {
            let m = ctx.object(m)?.flat()?;
            end_algebra(&m)?.algebra
        }
        None => ctx.algebra(None)?,
    };
    match global_dimension(&a, ctx.caps.depth)? {
        DimBound::Finite(d) => {
            Ok(Report::new(Status::Holds, format!("gl.dim {} = {d}", a.name())).with_data(json!({ "gldim": d })))
        }
        DimBound::ExceedsCap => {
            Err(Error::inconclusive(format!("gl.dim {} exceeds the depth cap {}", a.name(), ctx.caps.depth)))
        }
    }
}

pub fn finite_type(ctx: &mut Ctx, m: &str, catalog: Option<&str>) -> Result<Report> {
    let ambient = catalog.map(|c| ctx.catalog(c)).transpose()?;
    // a catalog file stands for the sum of its objects
    let x = if Path::new(m).is_file() && read_json(m)?.get("objects").is_some() {
        catalog_sum(&ctx.catalog(m)?)?
    } else {
        ctx.chain(m)?
    };
    let r = finite_type_check(&x, ambient.as_ref(), ctx.caps, ctx.seed)?;
    let data = serde_json::to_value(&r).expect("report serializes");
    let witness = if r.holds {
        None
    } else if let Some(w) = &r.bigenerator.witness {
        Some(json!({ "reason": w }))
    } else if let Some(w) = r.add_equals_perp.as_ref().and_then(|v| v.witness.clone()) {
        Some(json!({ "reason": format!("add(M) and perp m(D(A)) differ at {w}") }))
    } else {
        Some(json!({ "reason": format!("gl.dim End(M) = {}", r.end_gldim) }))
    };
    let summary = format!(
        "bi-generator {}, gl.dim End(M) = {} (dim {}), add(M) = perp: {}",
        r.bigenerator.holds,
        r.end_gldim,
        r.end_dim,
        r.add_equals_perp.as_ref().map_or("not checked".to_string(), |v| v.holds.to_string())
    );
    Ok(Report::new(Status::of(r.holds), summary).with_witness(witness).with_data(data))
}

pub fn enumerate(ctx: &mut Ctx, n: Option<usize>, mono: bool, out: Option<&Path>) -> Result<Report> {
    let a = ctx.algebra(None)?;
    let cap = ctx.caps.dim;
    let c = match n {
        None => Catalog::of_modules(
            &a,
            enumerate_module_indecomposables(&a, cap, ctx.seed)?,
            Vec::new(),
            "oracle: modules",
        )?,
        Some(n) if mono => enumerate_sn_indecomposables(&a, n, cap, ctx.seed)?,
        Some(n) => enumerate_mor_indecomposables(&a, n, cap, ctx.seed)?,
    };
    let stabilized = c.evidence.as_ref().map(|e| e.stabilized);
    let summary = format!("{} indecomposables at dim cap {cap}, stabilized {:?}", c.len(), stabilized);
    let lines = c.objects.iter().zip(&c.names).map(|(x, nm)| format!("{nm}: dims {:?}", x.dims())).collect();
    let v = catalog_to_json(&c, None);
    if let Some(path) = out {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let file = path.file_name().and_then(|f| f.to_str()).ok_or_else(|| Error::input("--out needs a file name"))?;
        write_json(dir, file, &v)?;
    }
    Ok(Report::new(Status::Holds, summary).with_data(v).with_lines(lines))
}

pub fn decompose(ctx: &mut Ctx, object: &str) -> Result<Report> {
    let (parts, certified): (Vec<Value>, Vec<bool>) = match ctx.object(object)? {
        Object::Module(m) => {
            fitting_decompose(&m, ctx.seed)?.summands.iter().map(|s| (module_to_json(&s.module), s.certified)).unzip()
        }
        Object::Chain(x) => mor_decompose(&x, ctx.seed)?.iter().map(|(y, c)| (mor_to_json(y), *c)).unzip(),
    };
    let summary = format!("{} indecomposable summands, all certified {}", parts.len(), certified.iter().all(|&c| c));
    Ok(Report::new(Status::Holds, summary).with_data(json!({ "summands": parts, "certified": certified })))
}

pub fn selftest_cmd(ctx: &mut Ctx, only: Option<usize>) -> Result<Report> {
    let reports = match only {
        Some(k) => vec![selftest::run(k, ctx.seed)?],
        None => selftest::run_all(ctx.seed),
    };
    let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let data: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail }))
        .collect();
    let summary = format!("{} of {} criteria pass", reports.len() - failed.len(), reports.len());
    Ok(Report::new(Status::of(failed.is_empty()), summary)
        .with_witness((!failed.is_empty()).then(|| json!({ "failed": failed })))
        .with_data(json!(data))
        .with_lines(reports.iter().map(|r| r.line()).collect()))
}

fn write_json(dir: &Path, file: &str, v: &Value) -> Result<String> {
    let path = dir.join(file);
    let text = serde_json::to_string_pretty(v).expect("fixture serializes") + "\n";
    std::fs::write(&path, text).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

pub fn emit_fixture(name: &str, out: &Path) -> Result<Report> {
    std::fs::create_dir_all(out).map_err(|e| Error::input(format!("cannot create {}: {e}", out.display())))?;
    let written = match name {
        "kA2" => vec![write_json(out, "kA2.json", &algebra_to_json(&ka2()))?],
        "lambda2" => vec![write_json(out, "lambda2.json", &algebra_to_json(&lambda(2)))?],
        "rem310_catalog" => {
            let c = ka2_mor2_catalog();
            let proj: Vec<usize> = KA2_MOR2_PROJECTIVES.iter().filter_map(|p| c.index_of(p)).collect();
            vec![write_json(out, "rem310_catalog.json", &catalog_to_json(&c, Some(&proj)))?]
        }
        "tn_fixtures" => {
            let mut w = Vec::new();
            for (a, n) in [(ka2(), 2), (lambda(2), 2), (lambda(2), 3)] {
                let t = monocat::algcore::triangular_algebra(&a, n)?;
                w.push(write_json(out, &format!("T{n}_{}.json", a.name()), &algebra_to_json(&t))?);
            }
            w
        }
        _ => {
            return Err(Error::input(format!(
                "unknown fixture {name:?}; expected kA2, lambda2, rem310_catalog or tn_fixtures"
            )))
        }
    };
    Ok(Report::new(Status::Holds, format!("wrote {} file(s)", written.len()))
        .with_data(json!({ "files": written }))
        .with_lines(written))
}
