use ramify_core::galois::{ramification_filtration, recover_subgroup, Family, FiniteGroup, Subgroup};
use ramify_core::herbrand::{
    break_conductor, different_valuation, herbrand_phi, newton_polygon, shifted_coefficient_valuations, with_origin,
    HerbrandFunction, SlopeData,
};
use ramify_core::local_field::{find_roots, root_diff_matrix, FieldElement, FieldTower, RootConfig, ValPoly};
use ramify_core::numeric::{format_rat, parse_rat, ExtRat, PiecewiseLinear, Rat};
use ramify_core::ramification::{classify, dilatation_chain, partition_at, LevelPartition, Mode, RootDiffMatrix};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::payload::{build_poly, parse_rats, quotient, Payload};
use crate::Command;

/// Flag values that override the payload.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub precision: Option<u32>,
    pub levels: Vec<String>,
    pub mode: Option<Mode>,
    pub r: Option<String>,
}

pub fn execute(command: Command, payload: &Payload, opts: &Options) -> Result<Value, CliError> {
    match command {
        Command::NewtonPolygon => newton_polygon_cmd(payload, opts),
        Command::Herbrand => herbrand_cmd(payload, opts),
        Command::Breaks => breaks_cmd(payload, opts),
        Command::Classify => classify_cmd(payload, opts),
        Command::Partition => partition_cmd(payload, opts),
        Command::Filtration => filtration_cmd(payload, opts),
        Command::DilatationChain => dilatation_cmd(payload, opts),
        Command::RecoverSubgroup => recover_cmd(payload),
    }
}

fn rat(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

fn ext(v: &ExtRat) -> Value {
    Value::String(v.to_string())
}

fn rats(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

fn blocks(bs: &[Vec<usize>]) -> Value {
    json!(bs.iter().map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn labels(group: &FiniteGroup, h: &Subgroup) -> Value {
    json!(h.iter().map(|&g| group.label(g)).collect::<Vec<_>>())
}

fn segments(f: &PiecewiseLinear) -> Value {
    let rows = f
        .breakpoints()
        .iter()
        .zip(f.breakpoint_values())
        .zip(f.slopes())
        .map(|((x, y), m)| json!({"from": rat(x), "value": rat(&y), "slope": rat(m)}))
        .collect();
    Value::Array(rows)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Closed => "closed",
        Mode::Open => "open",
    }
}

/// Roots of the payload polynomial in the payload tower, in digit order.
struct TowerRoots {
    tower: FieldTower,
    poly: ValPoly,
    roots: Vec<FieldElement>,
}

fn tower_roots(p: &Payload, opts: &Options) -> Result<TowerRoots, CliError> {
    let spec = p.tower.as_ref().ok_or_else(|| CliError::schema("`tower` is required"))?;
    let tower = spec.build(opts.precision)?;
    let poly = build_poly(spec, &tower, p.poly.as_deref())?;
    let roots = find_roots(&tower, &poly, &RootConfig::default())?;
    Ok(TowerRoots { tower, poly, roots })
}

fn base_index(p: &Payload, n: usize) -> Result<usize, CliError> {
    match p.base_root {
        None => Ok(n - 1),
        Some(b) if (1..=n).contains(&b) => Ok(b - 1),
        Some(b) => Err(CliError::schema(format!("base_root {b} outside roots 1..={n}"))),
    }
}

/// The root-difference matrix from either a tower or an explicit matrix.
pub fn matrix_source(p: &Payload, opts: &Options) -> Result<RootDiffMatrix, CliError> {
    match (&p.tower, &p.matrix) {
        (Some(_), None) => {
            let tr = tower_roots(p, opts)?;
            Ok(root_diff_matrix(&tr.tower, &tr.roots)?)
        }
        (None, Some(m)) => {
            if p.poly.is_some() {
                return Err(CliError::schema("`poly` needs a `tower`"));
            }
            m.build()
        }
        _ => Err(CliError::schema("give exactly one of `tower` or `matrix`")),
    }
}

struct Slopes {
    data: SlopeData,
    matrix: Option<RootDiffMatrix>,
}

fn slope_source(p: &Payload, opts: &Options) -> Result<Slopes, CliError> {
    match (&p.slopes, p.tower.is_some() || p.matrix.is_some()) {
        (Some(s), false) => {
            if p.base_root.is_some() || p.poly.is_some() {
                return Err(CliError::schema("`slopes` input takes no `base_root` or `poly`"));
            }
            Ok(Slopes { data: SlopeData::new(parse_rats(s)?)?, matrix: None })
        }
        (None, true) => {
            let m = matrix_source(p, opts)?;
            let base = base_index(p, m.size())?;
            Ok(Slopes { data: m.slope_data(base), matrix: Some(m) })
        }
        _ => Err(CliError::schema("give exactly one of `tower`, `matrix`, or `slopes`")),
    }
}

fn levels(p: &Payload, opts: &Options) -> Result<Vec<ExtRat>, CliError> {
    if opts.levels.is_empty() {
        p.levels()
    } else {
        opts.levels.iter().map(|s| crate::payload::parse_level(s)).collect()
    }
}

fn modes(p: &Payload, opts: &Options) -> Vec<Mode> {
    match opts.mode.or(p.mode.map(Mode::from)) {
        Some(m) => vec![m],
        None => vec![Mode::Closed, Mode::Open],
    }
}

fn partition_json(part: &LevelPartition) -> Value {
    json!({
        "level": ext(part.level()),
        "mode": mode_name(part.mode()),
        "radius": ext(part.radius()),
        "blocks": blocks(part.blocks()),
    })
}

fn partitions(
    m: &RootDiffMatrix,
    phi: &HerbrandFunction,
    levels: &[ExtRat],
    modes: &[Mode],
) -> Result<Value, CliError> {
    let mut out = Vec::new();
    for level in levels {
        for &mode in modes {
            out.push(partition_json(&partition_at(m, level, mode, phi)?));
        }
    }
    Ok(Value::Array(out))
}

/// `φ` of each distinct off-diagonal entry (or slope), ascending.
fn breaks_of(s: &Slopes, phi: &HerbrandFunction) -> Result<Vec<Rat>, CliError> {
    let mut values = match &s.matrix {
        Some(m) => m.distinct_values(),
        None => s.data.slopes().to_vec(),
    };
    values.dedup();
    values.iter().map(|v| Ok(phi.phi().eval_rat(v)?)).collect()
}

fn newton_polygon_cmd(p: &Payload, opts: &Options) -> Result<Value, CliError> {
    p.only("newton-polygon", &["tower", "poly", "base_root"])?;
    let tr = tower_roots(p, opts)?;
    let base = base_index(p, tr.roots.len())?;
    let points = with_origin(&shifted_coefficient_valuations(&tr.tower, &tr.poly, &tr.roots[base])?);
    let np = newton_polygon(&points)?;
    Ok(json!({
        "points": points.iter().map(|(k, v)| json!([k, ext(v)])).collect::<Vec<_>>(),
        "vertices": np.vertices().iter().map(|(k, v)| json!([k, rat(v)])).collect::<Vec<_>>(),
        "slopes": rats(&np.slopes()),
    }))
}

fn herbrand_cmd(p: &Payload, opts: &Options) -> Result<Value, CliError> {
    p.only("herbrand", &["tower", "poly", "base_root", "matrix", "slopes", "levels"])?;
    let s = slope_source(p, opts)?;
    let phi = herbrand_phi(&s.data);
    let mut out = json!({
        "degree": s.data.degree(),
        "slopes": rats(s.data.slopes()),
        "phi": segments(phi.phi()),
        "psi": segments(phi.psi()),
        "different": rat(&different_valuation(&s.data)),
        "conductor": rat(&break_conductor(&s.data)),
    });
    let xs = levels(p, opts)?;
    if !xs.is_empty() {
        let values = xs
            .iter()
            .map(|x| Ok(json!({"x": ext(x), "phi": ext(&phi.eval_phi(x)?), "psi": ext(&phi.eval_psi(x)?)})))
            .collect::<Result<Vec<_>, CliError>>()?;
        out["values"] = Value::Array(values);
    }
    Ok(out)
}

fn breaks_cmd(p: &Payload, opts: &Options) -> Result<Value, CliError> {
    p.only("breaks", &["tower", "poly", "base_root", "matrix", "slopes"])?;
    let s = slope_source(p, opts)?;
    let phi = herbrand_phi(&s.data);
    Ok(json!({
        "different": rat(&different_valuation(&s.data)),
        "conductor": rat(&break_conductor(&s.data)),
        "breaks": rats(&breaks_of(&s, &phi)?),
        "class": classify(&s.data).to_string(),
    }))
}

fn classify_cmd(p: &Payload, opts: &Options) -> Result<Value, CliError> {
    p.only("classify", &["tower", "poly", "base_root", "matrix", "slopes"])?;
    let s = slope_source(p, opts)?;
    Ok(json!({
        "class": classify(&s.data).to_string(),
        "conductor": rat(&break_conductor(&s.data)),
    }))
}

fn partition_cmd(p: &Payload, opts: &Options) -> Result<Value, CliError> {
    p.only("partition", &["tower", "poly", "base_root", "matrix", "levels", "mode"])?;
    let m = matrix_source(p, opts)?;
    let phi = herbrand_phi(&m.slope_data(base_index(p, m.size())?));
    let xs = levels(p, opts)?;
    if xs.is_empty() {
        return Err(CliError::schema("partition needs at least one level (`levels` or --level)"));
    }
    Ok(json!({ "partitions": partitions(&m, &phi, &xs, &modes(p, opts))? }))
}

fn filtration_cmd(p: &Payload, opts: &Options) -> Result<Value, CliError> {
    p.only("filtration", &["tower", "poly", "matrix", "group", "torsor", "levels", "mode"])?;
    let group = p.group.as_ref().ok_or_else(|| CliError::schema("`group` is required"))?.build()?;
    let torsor = p.torsor.as_ref().ok_or_else(|| CliError::schema("`torsor` is required"))?.build(&group)?;
    let m = matrix_source(p, opts)?;
    if m.size() != group.order() {
        return Err(CliError::Semantic(format!("{} roots but the group has order {}", m.size(), group.order())));
    }
    let phi = herbrand_phi(&m.slope_data(torsor.base_root(&group)));
    let f = ramification_filtration(&group, &torsor, &m, &phi)?;
    let pieces: Vec<Value> = f
        .pieces()
        .iter()
        .map(|piece| {
            json!({
                "lower": rat(&piece.lower),
                "upper": piece.upper.as_ref().map_or(Value::String("inf".into()), rat),
                "subgroup": labels(&group, &piece.subgroup),
            })
        })
        .collect();
    let jumps: Vec<Value> = f
        .at_breaks()
        .iter()
        .map(|b| json!({"level": rat(&b.level), "closed": labels(&group, &b.closed), "open": labels(&group, &b.open)}))
        .collect();
    let mut out = json!({
        "order": group.order(),
        "breaks": rats(f.breaks()),
        "filtration": pieces,
        "jumps": jumps,
        "inertia": labels(&group, f.inertia()),
    });
    let xs = levels(p, opts)?;
    if !xs.is_empty() {
        out["partitions"] = partitions(&m, &phi, &xs, &modes(p, opts))?;
    }
    Ok(out)
}

fn dilatation_cmd(p: &Payload, opts: &Options) -> Result<Value, CliError> {
    p.only("dilatation-chain", &["tower", "poly", "base_root", "matrix", "slopes", "r"])?;
    let s = slope_source(p, opts)?;
    let r = opts.r.as_ref().or(p.r.as_ref()).ok_or_else(|| CliError::schema("`r` is required (`r` or --r)"))?;
    let r = parse_rat(r)?;
    let chain = dilatation_chain(&s.data, &r)?;
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .map(|st| json!({"index": st.index, "center": rat(&st.center), "exp": rat(&st.exponent)}))
        .collect();
    Ok(json!({
        "level": rat(&chain.level),
        "radius": rat(&chain.radius),
        "steps": steps,
        "total_exponent": rat(&chain.total_exponent()),
        "survivors": chain.survivors.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "residual_root_valuations": chain.residual_root_valuations.iter().map(ext).collect::<Vec<_>>(),
        "residual_newton_values": chain.residual_newton_values.iter().map(ext).collect::<Vec<_>>(),
    }))
}

fn recover_cmd(p: &Payload) -> Result<Value, CliError> {
    p.only("recover-subgroup", &["group", "family", "quotient"])?;
    let group = p.group.as_ref().ok_or_else(|| CliError::schema("`group` is required"))?.build()?;
    let maps = p.quotient.as_ref().ok_or_else(|| CliError::schema("`quotient` is required"))?;
    let family = match &p.family {
        Some(f) => f.build(&group)?,
        None => Family::regular(&group),
    };
    let h = recover_subgroup(&group, &family, &quotient(maps))?;
    Ok(json!({
        "subgroup": labels(&group, &h),
        "order": h.len(),
        "index": group.order() / h.len(),
        "normal": group.is_normal(&h),
    }))
}
