//! Interpretation of parsed spec files as algebraic data.
//!
//! Indices in bracket tables are 1-based. Form literals name their value
//! basis with `e1..` (for `G`), `f1..` (for `A-1`) and `E(r, c)` or
//! `E(r, b, c)` for matrix values.

use crate::document::{Body, Document, Item, Pos, SpecError, Value};
use lie2alg::algebroid::{from_gamma_connection, SplitData, SplitLie2Algebroid};
use lie2alg::clwx::{ClwxExtension, SkeletalClwx};
use lie2alg::exterior::Form;
use lie2alg::gla::{antisymmetric, CrossedModuleLie, GradedLie2, LieAlgebra, QuadraticLie2};
use lie2alg::linalg::{Bilinear, PVec, RatMatrix, Trilinear};
use lie2alg::pontryagin::{coadjoint_matrix, cs5_primitive, GaugeMap, MatrixRep, MaurerCartan, QuadraticSplitData};
use lie2alg::poly::Poly;
use lie2alg::rat::Rat;
use lie2alg::samples;

type Res<T> = Result<T, SpecError>;

/// Keyed access to the items of a block, rejecting unknown keys.
pub struct Block<'a> {
    items: &'a [Item],
    pos: Pos,
}

impl<'a> Block<'a> {
    pub fn new(items: &'a [Item], pos: Pos, allowed: &[&str]) -> Res<Block<'a>> {
        for it in items {
            if !allowed.contains(&it.key.as_str()) {
                let exp: Vec<String> = allowed.iter().map(|k| format!("`{k}`")).collect();
                return Err(SpecError { pos: it.pos, message: format!("unknown key `{}`", it.key), expected: exp });
            }
        }
        let mut seen: Vec<&str> = Vec::new();
        for it in items {
            if seen.contains(&it.key.as_str()) {
                return Err(SpecError::at(it.pos, format!("duplicate key `{}`", it.key)));
            }
            seen.push(&it.key);
        }
        Ok(Block { items, pos })
    }

    pub fn item(&self, key: &str) -> Option<&'a Item> {
        self.items.iter().find(|it| it.key == key)
    }

    pub fn has(&self, key: &str) -> bool {
        self.item(key).is_some()
    }

    pub fn value(&self, key: &str) -> Res<Option<&'a Value>> {
        match self.item(key) {
            None => Ok(None),
            Some(Item { body: Body::Value(v), .. }) => Ok(Some(v)),
            Some(it) => Err(SpecError::at(it.pos, format!("`{key}` must be a value, not a block"))),
        }
    }

    pub fn required(&self, key: &str) -> Res<&'a Value> {
        self.value(key)?.ok_or_else(|| SpecError::at(self.pos, format!("missing key `{key}`")))
    }

    pub fn block(&self, key: &str) -> Res<Option<(&'a [Item], Pos)>> {
        match self.item(key) {
            None => Ok(None),
            Some(Item { body: Body::Block(b), pos, .. }) => Ok(Some((b, *pos))),
            Some(it) => Err(SpecError::at(it.pos, format!("`{key}` must be a block"))),
        }
    }
}

pub fn int(v: &Value) -> Res<usize> {
    match v {
        Value::Num(r, p) if r.is_integer() && !r.is_negative() => r.to_string().parse().map_err(|_| SpecError::at(*p, "integer out of range")),
        other => Err(SpecError::expecting_value(other.pos(), "a nonnegative integer")),
    }
}

fn rat(v: &Value) -> Res<Rat> {
    match v {
        Value::Num(r, _) => Ok(r.clone()),
        other => Err(SpecError::expecting_value(other.pos(), "a number")),
    }
}

fn list(v: &Value) -> Res<&[Value]> {
    match v {
        Value::List(xs, _) => Ok(xs),
        other => Err(SpecError::expecting_value(other.pos(), "a list `[...]`")),
    }
}

fn string(v: &Value) -> Res<&str> {
    match v {
        Value::Str(s, _) => Ok(s),
        other => Err(SpecError::expecting_value(other.pos(), "a string literal")),
    }
}

impl SpecError {
    fn expecting_value(pos: Pos, what: &str) -> SpecError {
        SpecError { pos, message: format!("expected {what}"), expected: vec![what.to_string()] }
    }
}

pub fn matrix(v: &Value, rows: usize, cols: usize) -> Res<RatMatrix> {
    let rs = list(v)?;
    if rs.len() != rows {
        return Err(SpecError::at(v.pos(), format!("dimension mismatch: expected {rows} rows, found {}", rs.len())));
    }
    let mut out = Vec::new();
    for r in rs {
        let cs = list(r)?;
        if cs.len() != cols {
            return Err(SpecError::at(r.pos(), format!("dimension mismatch: expected {cols} columns, found {}", cs.len())));
        }
        out.push(cs.iter().map(rat).collect::<Res<Vec<_>>>()?);
    }
    Ok(RatMatrix::from_rows(out))
}

/// `(i, j, ..., c)` tuples with 1-based indices bounded by `dims`.
fn table(v: &Value, dims: &[usize]) -> Res<Vec<(Vec<usize>, Rat)>> {
    let mut out = Vec::new();
    for t in list(v)? {
        let Value::Tuple(xs, p) = t else {
            return Err(SpecError::expecting_value(t.pos(), "a tuple `(i, j, k, c)`"));
        };
        if xs.len() != dims.len() + 1 {
            return Err(SpecError::at(*p, format!("expected {} indices and a coefficient", dims.len())));
        }
        let mut idx = Vec::new();
        for (x, &d) in xs.iter().zip(dims) {
            let i = int(x)?;
            if i == 0 || i > d {
                return Err(SpecError::at(x.pos(), format!("dimension mismatch: index {i} outside 1..={d}")));
            }
            idx.push(i - 1);
        }
        out.push((idx, rat(&xs[dims.len()])?));
    }
    Ok(out)
}

/// Target space of a form literal.
#[derive(Clone, Copy, Debug)]
pub enum Space {
    Scalar,
    G(usize),
    A(usize),
    /// `rows x cols` matrices.
    Mat(usize, usize),
    /// `Hom(∧²G, A-1)` as `a x g x g`.
    K(usize, usize),
}

impl Space {
    fn dim(self) -> usize {
        match self {
            Space::Scalar => 1,
            Space::G(d) | Space::A(d) => d,
            Space::Mat(r, c) => r * c,
            Space::K(a, g) => a * g * g,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Space::Scalar => "scalars",
            Space::G(_) => "G (tags e1..)",
            Space::A(_) => "A-1 (tags f1..)",
            Space::Mat(..) => "matrices (tags E(r, c))",
            Space::K(..) => "Hom(∧²G, A-1) (tags E(r, b, c))",
        }
    }

    fn resolve(self, name: &str, args: &[usize]) -> Option<Result<usize, String>> {
        let numbered = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok()) };
        let mismatch = || Some(Err(format!("value space mismatch: `{name}` does not belong to {}", self.name())));
        let in_range = |i: usize, d: usize| -> Result<usize, String> {
            if i == 0 || i > d {
                Err(format!("dimension mismatch: `{name}` outside 1..={d}"))
            } else {
                Ok(i - 1)
            }
        };
        match (self, numbered("e"), numbered("f"), name == "E") {
            (Space::G(d), Some(i), None, false) if args.is_empty() => Some(in_range(i, d)),
            (Space::A(d), None, Some(i), false) if args.is_empty() => Some(in_range(i, d)),
            (Space::Mat(r, c), _, _, true) if args.len() == 2 => Some(in_range(args[0], r).and_then(|i| Ok(i * c + in_range(args[1], c)?))),
            (Space::K(a, g), _, _, true) if args.len() == 3 => {
                Some(in_range(args[0], a).and_then(|i| Ok((i * g + in_range(args[1], g)?) * g + in_range(args[2], g)?)))
            }
            (_, Some(_), _, _) | (_, _, Some(_), _) | (_, _, _, true) => mismatch(),
            _ => None,
        }
    }
}

/// Parse a form literal; error columns point into the string.
pub fn form(v: &Value, n: usize, degree: usize, space: Space) -> Res<Form> {
    let src = string(v)?;
    let resolve = |name: &str, args: &[usize]| space.resolve(name, args);
    Form::parse_with(src, n, Some(degree), space.dim(), &resolve).map_err(|e| {
        let p = v.pos();
        SpecError { pos: Pos { line: p.line, col: p.col + 1 + e.offset }, message: e.message, expected: e.expected }
    })
}

pub fn poly(v: &Value, n: usize) -> Res<Poly> {
    let src = match v {
        Value::Num(r, _) => return Ok(Poly::constant(n, r.clone())),
        other => string(other)?,
    };
    Poly::parse(src, n).map_err(|e| {
        let p = v.pos();
        SpecError { pos: Pos { line: p.line, col: p.col + 1 + e.offset }, message: e.message, expected: e.expected }
    })
}

pub fn lie_algebra(items: &[Item], pos: Pos, extra: &[&str]) -> Res<LieAlgebra> {
    let mut keys = vec!["dim", "bracket"];
    keys.extend_from_slice(extra);
    let b = Block::new(items, pos, &keys)?;
    let d = int(b.required("dim")?)?;
    let entries = match b.value("bracket")? {
        None => Vec::new(),
        Some(v) => table(v, &[d, d, d])?.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)).collect(),
    };
    Ok(LieAlgebra::new(antisymmetric(d, &entries)))
}

/// A Lie algebra with an optional invariant form.
pub fn liealg_doc(doc: &Document) -> Res<(LieAlgebra, Option<RatMatrix>)> {
    let g = lie_algebra(&doc.items, doc.kind_pos, &["form"])?;
    let b = Block::new(&doc.items, doc.kind_pos, &["dim", "bracket", "form"])?;
    let form = b.value("form")?.map(|v| matrix(v, g.dim, g.dim)).transpose()?;
    Ok((g, form))
}

pub fn crossed_module_doc(doc: &Document) -> Res<CrossedModuleLie> {
    let b = Block::new(&doc.items, doc.kind_pos, &["h1", "h0", "psi", "action"])?;
    let (i1, p1) = b.block("h1")?.ok_or_else(|| SpecError::at(doc.kind_pos, "missing block `h1`"))?;
    let (i0, p0) = b.block("h0")?.ok_or_else(|| SpecError::at(doc.kind_pos, "missing block `h0`"))?;
    let h1 = lie_algebra(i1, p1, &[])?;
    let h0 = lie_algebra(i0, p0, &[])?;
    let psi = matrix(b.required("psi")?, h0.dim, h1.dim)?;
    let act = match b.value("action")? {
        None => Vec::new(),
        Some(v) => table(v, &[h0.dim, h1.dim, h1.dim])?.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)).collect(),
    };
    let action = Bilinear::from_entries(h0.dim, h1.dim, h1.dim, act);
    CrossedModuleLie::new(h1, h0, psi, action).map_err(|e| SpecError::at(doc.kind_pos, e.to_string()))
}

/// A fiber Lie 2-algebra with an optional pairing.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub lie: GradedLie2,
    pub pairing: Option<RatMatrix>,
}

impl Fiber {
    pub fn quadratic(&self, pos: Pos) -> Res<QuadraticLie2> {
        let p = self.pairing.clone().ok_or_else(|| SpecError::at(pos, "this command needs a fiber with a `pairing`"))?;
        QuadraticLie2::new(self.lie.clone(), p).map_err(|e| SpecError::at(pos, e.to_string()))
    }
}

const FIBER_KEYS: [&str; 7] = ["g", "a", "l1", "l2", "action", "l3", "pairing"];

pub fn named_fiber(name: &str, pos: Pos) -> Res<Fiber> {
    let q = match name {
        "so3" => samples::quadratic_so3(),
        "sl2" => samples::quadratic_sl2(),
        "heisenberg" => samples::coadjoint_heisenberg(),
        "semistrict_gl2" => samples::semistrict_gl2(),
        "abelian" => QuadraticLie2::from_quadratic_liealg(&LieAlgebra::abelian(1), &RatMatrix::identity(1)).expect("identity form"),
        _ => {
            return Err(SpecError {
                pos,
                message: format!("unknown fiber `{name}`"),
                expected: ["so3", "sl2", "heisenberg", "semistrict_gl2", "abelian"].iter().map(|s| format!("`{s}`")).collect(),
            })
        }
    };
    Ok(Fiber { lie: q.lie, pairing: Some(q.pairing) })
}

pub fn fiber_block(items: &[Item], pos: Pos) -> Res<Fiber> {
    let b = Block::new(items, pos, &FIBER_KEYS)?;
    let g = int(b.required("g")?)?;
    let a = int(b.required("a")?)?;
    let l1 = b.value("l1")?.map(|v| matrix(v, g, a)).transpose()?.unwrap_or_else(|| RatMatrix::zeros(g, a));
    let l2 = match b.value("l2")? {
        None => Vec::new(),
        Some(v) => table(v, &[g, g, g])?.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)).collect(),
    };
    let action = match b.value("action")? {
        None => Vec::new(),
        Some(v) => table(v, &[g, a, a])?.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)).collect(),
    };
    let l3 = match b.value("l3")? {
        None => Trilinear::zero(g, g, g, a),
        Some(v) => Trilinear::skew_from(g, a, table(v, &[g, g, g, a])?.into_iter().map(|(i, c)| (i[0], i[1], i[2], i[3], c))),
    };
    let pairing = b.value("pairing")?.map(|v| matrix(v, g, a)).transpose()?;
    let lie = GradedLie2::new(l1, antisymmetric(g, &l2), Bilinear::from_entries(g, a, a, action), l3).map_err(|e| SpecError::at(pos, e.to_string()))?;
    Ok(Fiber { lie, pairing })
}

/// `fiber = name` or `fiber { ... }`.
fn fiber_of(b: &Block<'_>, pos: Pos) -> Res<Fiber> {
    match b.item("fiber") {
        None => Err(SpecError::at(pos, "missing `fiber`")),
        Some(Item { body: Body::Value(Value::Ident(name, p)), .. }) => named_fiber(name, *p),
        Some(Item { body: Body::Block(items), pos, .. }) => fiber_block(items, *pos),
        Some(it) => Err(SpecError::expecting_value(it.pos, "a fiber name or block")),
    }
}

pub fn lie2_doc(doc: &Document) -> Res<Fiber> {
    fiber_block(&doc.items, doc.kind_pos)
}

/// An algebroid on a chart, with the pair `(A, B)` when it comes from one.
#[derive(Clone, Debug)]
pub struct AlgebroidModel {
    pub n: usize,
    pub fiber: Fiber,
    pub algebroid: SplitLie2Algebroid,
    pub connection: Option<(Form, Form)>,
    pub pos: Pos,
}

impl AlgebroidModel {
    pub fn quadratic(&self) -> Res<QuadraticSplitData> {
        let q = self.fiber.quadratic(self.pos)?;
        QuadraticSplitData::new(self.algebroid.clone(), q.pairing).map_err(|e| SpecError::at(self.pos, e.to_string()))
    }

    pub fn connection(&self) -> Res<&(Form, Form)> {
        self.connection.as_ref().ok_or_else(|| SpecError::at(self.pos, "this command needs a `gamma_connection` (A, B)"))
    }
}

const ALGEBROID_KEYS: [&str; 10] = ["chart", "fiber", "gamma_connection", "omega0", "omega1", "R", "gamma", "I", "J", "K"];

/// Chart dimension: the command-line value wins, then `chart = N`, then the default.
fn chart(b: &Block<'_>, cli: Option<usize>, default: usize) -> Res<usize> {
    let n = match (cli, b.value("chart")?) {
        (Some(n), _) => n,
        (None, Some(v)) => int(v)?,
        (None, None) => default,
    };
    if n > lie2alg::poly::MAX_VARS {
        return Err(SpecError::at(b.pos, format!("chart dimension {n} exceeds {}", lie2alg::poly::MAX_VARS)));
    }
    Ok(n)
}

fn connection_pair(items: &[Item], pos: Pos, n: usize, fib: &Fiber) -> Res<(Form, Form)> {
    let b = Block::new(items, pos, &["A", "B"])?;
    let a = form(b.required("A")?, n, 1, Space::G(fib.lie.g))?;
    let bb = form(b.required("B")?, n, 2, Space::A(fib.lie.a))?;
    Ok((a, bb))
}

fn algebroid_in(items: &[Item], pos: Pos, extra: &[&str], cli_n: Option<usize>, default_n: usize) -> Res<AlgebroidModel> {
    let mut keys = ALGEBROID_KEYS.to_vec();
    keys.extend_from_slice(extra);
    let b = Block::new(items, pos, &keys)?;
    let n = chart(&b, cli_n, default_n)?;
    let fiber = fiber_of(&b, pos)?;
    let (g, a) = (fiber.lie.g, fiber.lie.a);
    if let Some((ci, cp)) = b.block("gamma_connection")? {
        for k in ["omega0", "omega1", "R", "gamma", "I", "J", "K"] {
            if let Some(it) = b.item(k) {
                return Err(SpecError::at(it.pos, format!("`{k}` cannot be combined with `gamma_connection`")));
            }
        }
        let (af, bf) = connection_pair(ci, cp, n, &fiber)?;
        let algebroid = from_gamma_connection(&fiber.lie, &af, &bf).map_err(|e| SpecError::at(cp, e.to_string()))?;
        return Ok(AlgebroidModel { n, fiber, algebroid, connection: Some((af, bf)), pos });
    }
    let get = |key: &str, degree: usize, space: Space| -> Res<Form> {
        match b.value(key)? {
            None => Ok(Form::zero(n, degree, space.dim())),
            Some(v) => form(v, n, degree, space),
        }
    };
    let data = SplitData {
        fiber: fiber.lie.clone(),
        omega0: get("omega0", 1, Space::Mat(g, g))?,
        omega1: get("omega1", 1, Space::Mat(a, a))?,
        r: get("R", 2, Space::G(g))?,
        gamma: get("gamma", 2, Space::A(a))?,
        i: get("I", 3, Space::A(a))?,
        j: get("J", 2, Space::Mat(a, g))?,
        k: get("K", 1, Space::K(a, g))?,
    };
    let algebroid = SplitLie2Algebroid::new(data).map_err(|e| SpecError::at(pos, e.to_string()))?;
    Ok(AlgebroidModel { n, fiber, algebroid, connection: None, pos })
}

/// Files of kind `algebroid` and `gamma_connection`.
pub fn algebroid_doc(doc: &Document, cli_n: Option<usize>, default_n: usize) -> Res<AlgebroidModel> {
    match doc.kind.as_str() {
        "gamma_connection" => {
            let b = Block::new(&doc.items, doc.kind_pos, &["chart", "fiber", "A", "B"])?;
            let n = chart(&b, cli_n, default_n)?;
            let fiber = fiber_of(&b, doc.kind_pos)?;
            let ab: Vec<Item> = doc.items.iter().filter(|it| it.key == "A" || it.key == "B").cloned().collect();
            let (af, bf) = connection_pair(&ab, doc.kind_pos, n, &fiber)?;
            let algebroid = from_gamma_connection(&fiber.lie, &af, &bf).map_err(|e| SpecError::at(doc.kind_pos, e.to_string()))?;
            Ok(AlgebroidModel { n, fiber, algebroid, connection: Some((af, bf)), pos: doc.kind_pos })
        }
        _ => algebroid_in(&doc.items, doc.kind_pos, &["H", "gauge"], cli_n, default_n),
    }
}

pub enum ClwxModel {
    Skeletal(SkeletalClwx),
    Extension(ClwxExtension),
}

/// `skeletal { H = ... }`, or algebroid keys plus `H = "<4-form>"` or `H = cs5`.
pub fn clwx_doc(doc: &Document, cli_n: Option<usize>, default_n: usize) -> Res<ClwxModel> {
    let top = Block::new(&doc.items, doc.kind_pos, &[&ALGEBROID_KEYS[..], &["H", "skeletal"]].concat())?;
    if let Some((items, pos)) = top.block("skeletal")? {
        if let Some(it) = doc.items.iter().find(|it| it.key != "skeletal") {
            return Err(SpecError::at(it.pos, "a skeletal structure takes no other keys"));
        }
        let b = Block::new(items, pos, &["chart", "H"])?;
        let n = chart(&b, cli_n, default_n)?;
        let h = form(b.required("H")?, n, 4, Space::Scalar)?;
        return SkeletalClwx::new(n, h).map(ClwxModel::Skeletal).map_err(|e| SpecError::at(pos, e.to_string()));
    }
    let m = algebroid_in(&doc.items, doc.kind_pos, &["H"], cli_n, default_n)?;
    let hv = top.required("H")?;
    let h = match hv {
        Value::Ident(s, _) if s == "cs5" => {
            let (a, b) = m.connection()?;
            cs5_primitive(&m.fiber.quadratic(m.pos)?, a, b)
        }
        v => form(v, m.n, 4, Space::Scalar)?,
    };
    let q = m.quadratic()?;
    ClwxExtension::new(q, h).map(ClwxModel::Extension).map_err(|e| SpecError::at(hv.pos(), e.to_string()))
}

/// A gauge map for a `gauge` file.
pub struct GaugeModel {
    pub base: AlgebroidModel,
    pub gauge: GaugeMap,
}

/// `gauge { phi = "...", rep = so3 | heisenberg | [[...]], g = [["1", "x1"], ...] }`,
/// with `ρ1` the coadjoint action of `g`.
pub fn gauge_doc(doc: &Document, cli_n: Option<usize>, default_n: usize) -> Res<GaugeModel> {
    let m = algebroid_in(&doc.items, doc.kind_pos, &["gauge"], cli_n, default_n)?;
    m.connection()?;
    let top = Block::new(&doc.items, doc.kind_pos, &[&ALGEBROID_KEYS[..], &["gauge"]].concat())?;
    let (items, pos) = top.block("gauge")?.ok_or_else(|| SpecError::at(doc.kind_pos, "missing block `gauge`"))?;
    let b = Block::new(items, pos, &["phi", "rep", "g"])?;
    let (n, fib) = (m.n, &m.fiber.lie);
    let phi = match b.value("phi")? {
        None => Form::zero(n, 1, fib.a),
        Some(v) => form(v, n, 1, Space::A(fib.a))?,
    };
    let gauge = match b.value("g")? {
        None => GaugeMap::pure(fib, phi).map_err(|e| SpecError::at(pos, e.to_string()))?,
        Some(gv) => {
            let rv = b.required("rep")?;
            let gens = match rv {
                Value::Ident(s, _) if s == "so3" => samples::so3_rep(),
                Value::Ident(s, _) if s == "heisenberg" => samples::heisenberg_rep(),
                Value::List(ms, _) => {
                    let d = ms.first().map_or(Ok(0), |m| list(m).map(<[Value]>::len))?;
                    ms.iter().map(|m| matrix(m, d, d)).collect::<Res<Vec<_>>>()?
                }
                other => return Err(SpecError::expecting_value(other.pos(), "`so3`, `heisenberg` or a list of matrices")),
            };
            let d = gens.first().map_or(0, |m| m.rows);
            let rows = list(gv)?;
            if rows.len() != d {
                return Err(SpecError::at(gv.pos(), format!("dimension mismatch: g must be {d}x{d}")));
            }
            let mut gm: PVec = Vec::new();
            for r in rows {
                let cs = list(r)?;
                if cs.len() != d {
                    return Err(SpecError::at(r.pos(), format!("dimension mismatch: g must be {d}x{d}")));
                }
                for c in cs {
                    gm.push(poly(c, n)?);
                }
            }
            let rep = MatrixRep::new(fib, gens).map_err(|e| SpecError::at(rv.pos(), e.to_string()))?;
            let pairing = m.fiber.quadratic(m.pos)?.pairing;
            let rho1 = coadjoint_matrix(&rep, &gm, &pairing).map_err(|e| SpecError::at(gv.pos(), e.to_string()))?;
            GaugeMap::new(fib, &rep, gm, rho1, phi, MaurerCartan::Right).map_err(|e| SpecError::at(pos, e.to_string()))?
        }
    };
    Ok(GaugeModel { base: m, gauge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse;

    #[test]
    fn so3_structure_constants() {
        let d = parse("kind liealg\ndim = 3\nbracket = [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)]").unwrap();
        let (g, form) = liealg_doc(&d).unwrap();
        assert_eq!(g, samples::so3());
        assert!(form.is_none());
    }

    #[test]
    fn form_errors_point_into_the_string() {
        let d = parse("kind gamma_connection\nfiber = so3\nA = \"x1^*dx1*e1\"\nB = \"0\"").unwrap();
        let e = algebroid_doc(&d, Some(3), 6).unwrap_err();
        assert_eq!(e.pos.line, 3);
        assert_eq!(e.pos.col, 5 + 1 + 3);
    }

    #[test]
    fn value_space_mismatch() {
        let d = parse("kind gamma_connection\nfiber = so3\nA = \"x1*dx2*f1\"\nB = \"0\"").unwrap();
        let e = algebroid_doc(&d, Some(3), 6).unwrap_err();
        assert!(e.message.contains("value space mismatch"), "{e}");
    }

    #[test]
    fn unknown_keys_list_alternatives() {
        let d = parse("kind lie2\ng = 1\na = 1\nl4 = []").unwrap();
        let e = lie2_doc(&d).unwrap_err();
        assert_eq!(e.pos.line, 4);
        assert!(e.expected.contains(&"`l3`".to_string()));
    }
}
