//! JSON file formats (`format_version` 1).
//!
//! Elements are digit arrays, low to high. Evaluation points are element
//! values (the digits read as a base-p integer). Positions are 1-based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{Codeword, LinearCode, RsCode};
use crate::construct::SchemeCollection;
use crate::error::{Error, Result};
use crate::gf::{Field, Gf, Poly, SubfieldBasis};
use crate::repair::{RepairScheme, SchemeCode};
use crate::subspace::Subspace;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDesc {
    pub p: u32,
    pub d: u32,
    pub ell: u32,
    pub modulus: Vec<u32>,
    pub primitive: Vec<u32>,
}

impl FieldDesc {
    pub fn of(fld: &Field) -> Self {
        FieldDesc {
            p: fld.p(),
            d: fld.d(),
            ell: fld.ell() as u32,
            modulus: fld.modulus().to_vec(),
            primitive: fld.digits(fld.primitive()),
        }
    }

    pub fn build(&self) -> Result<Field> {
        let mut v = 0u64;
        for &dg in self.primitive.iter().rev() {
            if dg >= self.p {
                return Err(Error::FieldParams(format!(
                    "digit {dg} not below p = {}",
                    self.p
                )));
            }
            v = v * self.p as u64 + dg as u64;
            if v > u32::MAX as u64 {
                return Err(Error::ElementOutOfRange(u32::MAX));
            }
        }
        Field::with_primitive(self.p, self.d, self.ell, Some(&self.modulus), v as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeDesc {
    Rs {
        field: FieldDesc,
        eval_points: Vec<u32>,
        k: usize,
    },
    Linear {
        field: FieldDesc,
        n: usize,
        generator: Vec<Vec<Vec<u32>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDoc {
    pub format_version: u32,
    pub code: CodeDesc,
    pub jstar: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Vec<Vec<u32>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeBody {
    pub jstar: usize,
    pub polys: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionDoc {
    pub format_version: u32,
    pub code: CodeDesc,
    pub schemes: Vec<SchemeBody>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<Vec<u32>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodewordDoc {
    pub format_version: u32,
    pub field: FieldDesc,
    pub symbols: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub format_version: u32,
    pub field: FieldDesc,
    pub elems: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    pub format_version: u32,
    pub field: FieldDesc,
    /// RREF rows, entries as digit arrays of subfield elements.
    pub rows: Vec<Vec<Vec<u32>>>,
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn check_version(v: u32) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::FormatVersion(v))
    }
}

fn elems_out(fld: &Field, v: &[Gf]) -> Vec<Vec<u32>> {
    v.iter().map(|&a| fld.digits(a)).collect()
}

fn elems_in(fld: &Field, v: &[Vec<u32>]) -> Result<Vec<Gf>> {
    v.iter().map(|d| fld.from_digits(d)).collect()
}

fn position_in(pos: usize, n: usize) -> Result<usize> {
    if pos == 0 || pos > n {
        return Err(Error::PositionOutOfRange {
            pos: pos.wrapping_sub(1),
            n,
        });
    }
    Ok(pos - 1)
}

pub fn code_desc(code: &SchemeCode) -> CodeDesc {
    match code {
        SchemeCode::Rs(c) => rs_desc(c),
        SchemeCode::Linear(c) => CodeDesc::Linear {
            field: FieldDesc::of(c.field()),
            n: c.n(),
            generator: c
                .generator()
                .iter()
                .map(|r| elems_out(c.field(), r))
                .collect(),
        },
    }
}

pub fn rs_desc(c: &RsCode) -> CodeDesc {
    CodeDesc::Rs {
        field: FieldDesc::of(c.field()),
        eval_points: c.points().iter().map(|a| a.0).collect(),
        k: c.k(),
    }
}

pub fn code_from_desc(desc: &CodeDesc) -> Result<SchemeCode> {
    match desc {
        CodeDesc::Rs {
            field,
            eval_points,
            k,
        } => {
            let fld = Arc::new(field.build()?);
            let pts = eval_points
                .iter()
                .map(|&v| fld.element(v))
                .collect::<Result<Vec<_>>>()?;
            Ok(SchemeCode::Rs(RsCode::new(fld, pts, *k)?))
        }
        CodeDesc::Linear {
            field,
            n,
            generator,
        } => {
            let fld = Arc::new(field.build()?);
            let rows = generator
                .iter()
                .map(|r| elems_in(&fld, r))
                .collect::<Result<Vec<_>>>()?;
            Ok(SchemeCode::Linear(LinearCode::from_generator(
                fld, *n, rows,
            )?))
        }
    }
}

fn polys_out(fld: &Field, polys: &[Poly]) -> Vec<Vec<Vec<u32>>> {
    polys.iter().map(|g| elems_out(fld, g.coeffs())).collect()
}

fn polys_in(fld: &Field, v: &[Vec<Vec<u32>>]) -> Result<Vec<Poly>> {
    v.iter().map(|c| elems_in(fld, c).map(Poly::new)).collect()
}

pub fn field_to_json(fld: &Field) -> String {
    pretty(&FieldDesc::of(fld))
}

pub fn field_from_json(s: &str) -> Result<Field> {
    serde_json::from_str::<FieldDesc>(s)?.build()
}

pub fn scheme_to_json(scheme: &RepairScheme) -> String {
    let fld = scheme.field();
    let (polys, words) = match scheme.polys() {
        Some(p) => (Some(polys_out(fld, p)), None),
        None => (
            None,
            Some(scheme.words().iter().map(|w| elems_out(fld, w)).collect()),
        ),
    };
    pretty(&SchemeDoc {
        format_version: FORMAT_VERSION,
        code: code_desc(scheme.code()),
        jstar: scheme.target() + 1,
        polys,
        words,
    })
}

pub fn scheme_from_json(s: &str) -> Result<RepairScheme> {
    let doc: SchemeDoc = serde_json::from_str(s)?;
    check_version(doc.format_version)?;
    let code = code_from_desc(&doc.code)?;
    let fld = code.field().clone();
    let target = position_in(doc.jstar, code.n())?;
    match (code, doc.polys, doc.words) {
        (SchemeCode::Rs(c), Some(p), None) => {
            RepairScheme::from_polys(c, target, polys_in(&fld, &p)?)
        }
        (SchemeCode::Linear(c), None, Some(w)) => {
            let words = w
                .iter()
                .map(|r| elems_in(&fld, r))
                .collect::<Result<Vec<_>>>()?;
            RepairScheme::from_words(c, target, words)
        }
        _ => Err(Error::Parse {
            line: 0,
            column: 0,
            msg: "rs schemes need `polys`, linear schemes need `words`".into(),
        }),
    }
}

pub fn collection_to_json(coll: &SchemeCollection) -> String {
    let fld = coll.code().field();
    pretty(&CollectionDoc {
        format_version: FORMAT_VERSION,
        code: rs_desc(coll.code()),
        schemes: coll
            .schemes()
            .iter()
            .map(|s| SchemeBody {
                jstar: s.target() + 1,
                polys: polys_out(fld, s.polys().expect("collections hold RS schemes")),
            })
            .collect(),
        bases: coll
            .bases()
            .map(|bs| bs.iter().map(|b| elems_out(fld, b.elems())).collect()),
    })
}

pub fn collection_from_json(s: &str) -> Result<SchemeCollection> {
    let doc: CollectionDoc = serde_json::from_str(s)?;
    check_version(doc.format_version)?;
    let SchemeCode::Rs(code) = code_from_desc(&doc.code)? else {
        return Err(Error::Unsupported("collections are over RS codes".into()));
    };
    let fld = code.field().clone();
    let schemes = doc
        .schemes
        .iter()
        .map(|b| {
            let t = position_in(b.jstar, code.n())?;
            RepairScheme::from_polys(code.clone(), t, polys_in(&fld, &b.polys)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let bases = doc
        .bases
        .map(|bs| {
            bs.iter()
                .map(|e| SubfieldBasis::new(&fld, elems_in(&fld, e)?))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    SchemeCollection::new(code, schemes, bases)
}

pub fn codeword_to_json(fld: &Field, cw: &Codeword) -> String {
    pretty(&CodewordDoc {
        format_version: FORMAT_VERSION,
        field: FieldDesc::of(fld),
        symbols: elems_out(fld, cw.symbols()),
    })
}

pub fn codeword_from_json(s: &str) -> Result<(Field, Codeword)> {
    let doc: CodewordDoc = serde_json::from_str(s)?;
    check_version(doc.format_version)?;
    let fld = doc.field.build()?;
    let symbols = elems_in(&fld, &doc.symbols)?;
    Ok((fld, Codeword::new(symbols)))
}

pub fn basis_to_json(fld: &Field, b: &SubfieldBasis) -> String {
    pretty(&BasisDoc {
        format_version: FORMAT_VERSION,
        field: FieldDesc::of(fld),
        elems: elems_out(fld, b.elems()),
    })
}

pub fn basis_from_json(s: &str) -> Result<(Field, SubfieldBasis)> {
    let doc: BasisDoc = serde_json::from_str(s)?;
    check_version(doc.format_version)?;
    let fld = doc.field.build()?;
    let elems = elems_in(&fld, &doc.elems)?;
    let b = SubfieldBasis::new(&fld, elems)?;
    Ok((fld, b))
}

pub fn subspace_to_json(fld: &Field, s: &Subspace) -> String {
    pretty(&SubspaceDoc {
        format_version: FORMAT_VERSION,
        field: FieldDesc::of(fld),
        rows: s.rows().iter().map(|r| elems_out(fld, r)).collect(),
    })
}

pub fn subspace_from_json(s: &str) -> Result<(Field, Subspace)> {
    let doc: SubspaceDoc = serde_json::from_str(s)?;
    check_version(doc.format_version)?;
    let fld = doc.field.build()?;
    let rows = doc
        .rows
        .iter()
        .map(|r| elems_in(&fld, r))
        .collect::<Result<Vec<_>>>()?;
    let sub = Subspace::from_rref_rows(&fld, rows)?;
    Ok((fld, sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construction_iii, default_w};

    #[test]
    fn scheme_round_trip() {
        let f = Arc::new(Field::prime_extension(2, 3).unwrap());
        let code = RsCode::full_length(f.clone(), 6).unwrap();
        let s = construction_iii(
            &code,
            &default_w(&f, 1).unwrap(),
            &SubfieldBasis::standard(&f),
            4,
        )
        .unwrap();
        let text = scheme_to_json(&s);
        let back = scheme_from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(scheme_to_json(&back), text);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = scheme_from_json("{\n  \"format_version\": 1,\n  oops\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let f = Field::prime_extension(2, 2).unwrap();
        let cw = codeword_to_json(&f, &Codeword::new(vec![Gf(1), Gf(2)]));
        let bumped = cw.replace("\"format_version\": 1", "\"format_version\": 7");
        assert_eq!(
            codeword_from_json(&bumped).unwrap_err(),
            Error::FormatVersion(7)
        );
    }

    #[test]
    fn field_round_trip() {
        let f = Field::new(3, 1, 2, None).unwrap();
        assert_eq!(field_from_json(&field_to_json(&f)).unwrap(), f);
    }
}
