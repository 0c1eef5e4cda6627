use super::LinearCode;
use crate::error::{Error, Result};
use crate::galg::{build_iso, AlgebraElement, AlgebraIso, BlockKind};
use crate::gf::{make_field, Elt, FieldDescriptor};
use crate::linalg::{self, FieldOps, Matrix};
use crate::util::prime_power;
use crate::wa::{Decomposition, GroupSpec};
use serde_json::{json, Value};

/// A left ideal ⊕ ⟨B_i⟩ of a decomposition, one RREF generator per summand
/// (summands in canonical order), padded with zero rows to n_i × n_i.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec {
    pub decomposition: Decomposition,
    pub fields: Vec<FieldDescriptor>,
    pub gens: Vec<Matrix<Elt>>,
}

fn summand_fields(dec: &Decomposition) -> Result<Vec<FieldDescriptor>> {
    let (p, e) = prime_power(dec.q).ok_or(Error::NotPrimePower(dec.q))?;
    dec.summands().into_iter().map(|(_, r)| make_field(p as u32, e as usize * r as usize)).collect()
}

fn normalize(f: &crate::gf::Field, m: &Matrix<Elt>, n: usize) -> Matrix<Elt> {
    let mut a = m.clone();
    linalg::rref(f, &mut a);
    a.resize(n, vec![f.zero_elt(); n]);
    a
}

impl IdealSpec {
    /// Validates shapes and entries, then brings every generator to padded RREF.
    pub fn new(decomposition: &Decomposition, gens: Vec<Matrix<Elt>>) -> Result<IdealSpec> {
        let fields = summand_fields(decomposition)?;
        let sizes = decomposition.summands();
        if gens.len() != sizes.len() {
            return Err(Error::MalformedIdeal(format!("{} generators for {} summands", gens.len(), sizes.len())));
        }
        let mut out = Vec::with_capacity(gens.len());
        for (i, (g, f)) in gens.iter().zip(&fields).enumerate() {
            let n = sizes[i].0 as usize;
            if g.len() > n || g.iter().any(|row| row.len() != n) {
                return Err(Error::MalformedIdeal(format!("summand {i} needs rows of length {n}, at most {n} rows")));
            }
            if g.iter().flatten().any(|e| e.len() != f.k() || e.iter().any(|&c| c >= f.p())) {
                return Err(Error::MalformedIdeal(format!("summand {i} has entries outside F_{{{}^{}}}", f.p(), f.k())));
            }
            out.push(normalize(f, g, n));
        }
        Ok(IdealSpec { decomposition: decomposition.clone(), fields, gens: out })
    }

    pub fn zero(decomposition: &Decomposition) -> Result<IdealSpec> {
        let fields = summand_fields(decomposition)?;
        let gens = decomposition
            .summands()
            .iter()
            .zip(&fields)
            .map(|(&(n, _), f)| linalg::zeros(&**f, n as usize, n as usize))
            .collect();
        Ok(IdealSpec { decomposition: decomposition.clone(), fields, gens })
    }

    pub fn full(decomposition: &Decomposition) -> Result<IdealSpec> {
        let fields = summand_fields(decomposition)?;
        let gens = decomposition
            .summands()
            .iter()
            .zip(&fields)
            .map(|(&(n, _), f)| linalg::identity(&**f, n as usize))
            .collect();
        Ok(IdealSpec { decomposition: decomposition.clone(), fields, gens })
    }

    /// The blockwise image of the left ideal generated by `u`.
    pub fn from_element(iso: &AlgebraIso, u: &AlgebraElement) -> Result<IdealSpec> {
        let mats = iso.unflatten(&iso.apply(u)?)?;
        IdealSpec::new(&iso.decomposition, mats)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.gens.iter().zip(&self.fields).map(|(g, f)| linalg::rank(&**f, g)).collect()
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .gens
            .iter()
            .zip(&self.fields)
            .map(|(g, f)| {
                let rows: Vec<Value> = g
                    .iter()
                    .map(|row| row.iter().map(|e| if f.k() == 1 { json!(e[0]) } else { json!(e) }).collect())
                    .collect();
                json!({ "gen": rows })
            })
            .collect();
        json!({ "blocks": blocks })
    }

    /// Parses {"blocks": [{"gen": [[...]]}, ...]}; entries are integers (prime-field
    /// constants) or coefficient arrays, low degree first.
    pub fn from_json(decomposition: &Decomposition, v: &Value) -> Result<IdealSpec> {
        let fields = summand_fields(decomposition)?;
        let bad = |m: &str| Error::MalformedIdeal(m.to_string());
        let blocks = v.get("blocks").and_then(Value::as_array).ok_or_else(|| bad("missing \"blocks\" array"))?;
        if blocks.len() != fields.len() {
            return Err(Error::MalformedIdeal(format!("{} blocks for {} summands", blocks.len(), fields.len())));
        }
        let mut gens = Vec::with_capacity(blocks.len());
        for (b, f) in blocks.iter().zip(&fields) {
            let rows = b.get("gen").and_then(Value::as_array).ok_or_else(|| bad("block without \"gen\""))?;
            let mut m = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("generator rows must be arrays"))?;
                let mut r = Vec::with_capacity(row.len());
                for e in row {
                    r.push(parse_entry(f, e)?);
                }
                m.push(r);
            }
            gens.push(m);
        }
        IdealSpec::new(decomposition, gens)
    }
}

fn parse_entry(f: &FieldDescriptor, e: &Value) -> Result<Elt> {
    if let Some(x) = e.as_i64() {
        return Ok(f.from_int(x));
    }
    let arr = e.as_array().ok_or_else(|| Error::MalformedIdeal("entries must be integers or arrays".into()))?;
    if arr.len() > f.k() {
        return Err(Error::MalformedIdeal(format!("entry has {} coefficients, field degree is {}", arr.len(), f.k())));
    }
    let mut out = f.zero_elt();
    for (o, c) in out.iter_mut().zip(arr) {
        let c = c.as_i64().ok_or_else(|| Error::MalformedIdeal("coefficients must be integers".into()))?;
        *o = c.rem_euclid(f.p() as i64) as u32;
    }
    Ok(out)
}

/// Σ n_i · r_i · rank(B_i), as a dimension over F_q.
pub fn code_dimension(ideal: &IdealSpec) -> usize {
    ideal
        .decomposition
        .summands()
        .iter()
        .zip(ideal.ranks())
        .map(|(&(n, r), rk)| n as usize * r as usize * rk)
        .sum()
}

/// Pull the blockwise ideal back through ψ⁻¹. Each summand contributes the F_q-span of
/// c·e_{uv}·B over matrix units e_{uv} and a power basis c of F_{q^r}.
pub fn code_from_ideal(iso: &AlgebraIso, ideal: &IdealSpec) -> Result<LinearCode> {
    if iso.decomposition != ideal.decomposition {
        return Err(Error::DimensionMismatch("ideal and isomorphism have different decompositions".into()));
    }
    let dim = iso.dim();
    let mut rows = Vec::new();
    for (b, g) in iso.blocks.iter().zip(&ideal.gens) {
        let f = &*b.field;
        for brow in g.iter().filter(|r| r.iter().any(|e| !f.is_zero(e))) {
            for c in 0..b.r {
                let mut basis = f.zero_elt();
                basis[c] = 1;
                let scaled: Vec<Elt> = brow.iter().map(|e| f.mul(&basis, e)).collect();
                for u in 0..b.n {
                    let mut v = vec![0u8; dim];
                    for (j, e) in scaled.iter().enumerate() {
                        let s = b.offset + (u * b.n + j) * b.r;
                        for (t, &x) in e.iter().enumerate() {
                            v[s + t] = x as u8;
                        }
                    }
                    rows.push(linalg::mat_vec(&*iso.field, iso.inverse_matrix(), &v));
                }
            }
        }
    }
    LinearCode::from_rows(&iso.field, dim, rows)
}

/// Dual ideal in F_q[D_n] by the dihedral dual tables: characters complement,
/// self-reciprocal and pair blocks follow their 2×2 rules.
pub fn dihedral_dual_ideal(q: u64, n: u64, ideal: &IdealSpec) -> Result<IdealSpec> {
    let iso = build_iso(q, &GroupSpec::Dihedral(n))?;
    dihedral_dual_ideal_with(&iso, ideal)
}

pub fn dihedral_dual_ideal_with(iso: &AlgebraIso, ideal: &IdealSpec) -> Result<IdealSpec> {
    if !matches!(iso.group.spec(), GroupSpec::Dihedral(_)) {
        return Err(Error::Unsupported("dual tables apply to dihedral groups only".into()));
    }
    if iso.decomposition != ideal.decomposition {
        return Err(Error::MalformedIdeal("ideal does not match the dihedral decomposition".into()));
    }
    let mut out = Vec::with_capacity(ideal.gens.len());
    for (b, m) in iso.blocks.iter().zip(&ideal.gens) {
        let f = &*b.field;
        let (zero, one, two) = (f.zero_elt(), f.one_elt(), f.from_int(2));
        let rk = linalg::rank(f, m);
        let new = match (&b.kind, rk) {
            (BlockKind::Scalar, 0) => linalg::identity(f, 1),
            (BlockKind::Scalar, _) => linalg::zeros(f, 1, 1),
            (_, 0) => linalg::identity(f, 2),
            (_, 2) => linalg::zeros(f, 2, 2),
            (BlockKind::SelfReciprocal { a }, _) => {
                let row = if f.is_zero(&m[0][0]) {
                    vec![two.clone(), f.neg(a)]
                } else {
                    let lambda = &m[0][1];
                    vec![f.add(a, &f.mul(&two, lambda)), f.sub(&f.neg(&two), &f.mul(a, lambda))]
                };
                vec![row, vec![zero.clone(), zero.clone()]]
            }
            (BlockKind::Pair { .. }, _) => {
                let row = if f.is_zero(&m[0][0]) { vec![zero.clone(), one.clone()] } else { vec![one.clone(), f.neg(&m[0][1])] };
                vec![row, vec![zero.clone(), zero.clone()]]
            }
            (BlockKind::Composite, _) => unreachable!("dihedral blocks are never composite"),
        };
        out.push(normalize(f, &new, b.n));
    }
    IdealSpec::new(&ideal.decomposition, out)
}
