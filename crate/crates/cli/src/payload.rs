//! JSON input payloads. Every object rejects unknown fields; rationals are
//! strings `"a/b"` and valuations may also be `"inf"`.
//!
//! Roots are numbered from 1 in matrices, `base_root`, and all output.
//! Group elements are 0-based rows of the multiplication table.

use ramify_core::galois::{Coproduct, Family, FiberQuotient, FiniteGroup, GSet, Morphism, Torsor};
use ramify_core::local_field::{FieldElement, FieldTower, StepKind, ValPoly};
use ramify_core::numeric::{parse_rat, ExtRat, Rat};
use ramify_core::ramification::{Mode, RamificationError, RootDiffMatrix};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    pub tower: Option<TowerSpec>,
    /// Polynomial whose roots are studied, ascending degree. Defaults to the
    /// defining polynomial of the last tower step.
    pub poly: Option<Vec<Coeff>>,
    pub base_root: Option<usize>,
    pub matrix: Option<MatrixSpec>,
    pub slopes: Option<Vec<String>>,
    pub group: Option<GroupSpec>,
    pub torsor: Option<TorsorSpec>,
    pub family: Option<FamilySpec>,
    pub quotient: Option<Vec<Vec<usize>>>,
    pub levels: Option<Vec<String>>,
    pub mode: Option<ModeSpec>,
    pub r: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub p: u64,
    pub precision: Option<u32>,
    pub steps: Vec<StepSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSpec {
    pub kind: KindSpec,
    pub poly: Vec<String>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindSpec {
    Unramified,
    Eisenstein,
}

/// A coefficient: a rational, or coordinates in the tower's integral basis.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Rational(String),
    Coords(Vec<String>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub n: usize,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsorSpec {
    pub root_to_group: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub objects: Vec<ObjectSpec>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
}

/// `regular` objects come with all right multiplications as automorphisms.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ObjectSpec {
    Regular,
    Cosets { subgroup: Vec<usize> },
    Action { action: Vec<Vec<usize>> },
    Coproduct { left: usize, right: usize },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: usize,
    pub target: usize,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    Closed,
    Open,
}

impl From<ModeSpec> for Mode {
    fn from(m: ModeSpec) -> Self {
        match m {
            ModeSpec::Closed => Mode::Closed,
            ModeSpec::Open => Mode::Open,
        }
    }
}

impl Payload {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Fails when a field outside `allowed` is present.
    pub fn only(&self, command: &str, allowed: &[&str]) -> Result<(), CliError> {
        let present = [
            ("tower", self.tower.is_some()),
            ("poly", self.poly.is_some()),
            ("base_root", self.base_root.is_some()),
            ("matrix", self.matrix.is_some()),
            ("slopes", self.slopes.is_some()),
            ("group", self.group.is_some()),
            ("torsor", self.torsor.is_some()),
            ("family", self.family.is_some()),
            ("quotient", self.quotient.is_some()),
            ("levels", self.levels.is_some()),
            ("mode", self.mode.is_some()),
            ("r", self.r.is_some()),
        ];
        match present.iter().find(|(name, set)| *set && !allowed.contains(name)) {
            Some((name, _)) => Err(CliError::schema(format!("field `{name}` is not used by {command}"))),
            None => Ok(()),
        }
    }

    pub fn levels(&self) -> Result<Vec<ExtRat>, CliError> {
        self.levels.iter().flatten().map(|s| parse_level(s)).collect()
    }
}

pub fn parse_level(s: &str) -> Result<ExtRat, CliError> {
    let v: ExtRat = s.parse()?;
    if v.is_negative() {
        return Err(CliError::schema(format!("level {s:?} is negative")));
    }
    Ok(v)
}

pub fn parse_rats(items: &[String]) -> Result<Vec<Rat>, CliError> {
    items.iter().map(|s| Ok(parse_rat(s)?)).collect()
}

impl TowerSpec {
    pub fn build(&self, precision: Option<u32>) -> Result<FieldTower, CliError> {
        let precision = precision
            .or(self.precision)
            .ok_or_else(|| CliError::schema("tower needs a precision (field `precision` or --precision)"))?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let kind = match s.kind {
                    KindSpec::Unramified => StepKind::Unramified,
                    KindSpec::Eisenstein => StepKind::Eisenstein,
                };
                Ok((kind, parse_rats(&s.poly)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(FieldTower::from_rational_steps(self.p, precision, &steps)?)
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    fn last_poly(&self) -> Result<Vec<Coeff>, CliError> {
        match self.steps.last() {
            Some(step) => Ok(step.poly.iter().cloned().map(Coeff::Rational).collect()),
            None => Err(CliError::schema("`poly` is required when the tower has no steps")),
        }
    }
}

pub fn build_poly(tower_spec: &TowerSpec, tower: &FieldTower, poly: Option<&[Coeff]>) -> Result<ValPoly, CliError> {
    let coeffs = match poly {
        Some(c) => c.to_vec(),
        None => tower_spec.last_poly()?,
    };
    let elems = coeffs.iter().map(|c| coeff(tower, c)).collect::<Result<Vec<FieldElement>, _>>()?;
    Ok(ValPoly::new(tower, elems)?)
}

fn coeff(tower: &FieldTower, c: &Coeff) -> Result<FieldElement, CliError> {
    match c {
        Coeff::Rational(s) => Ok(tower.from_rat(&parse_rat(s)?)?),
        Coeff::Coords(cs) => {
            if cs.len() != tower.degree() {
                return Err(CliError::schema(format!(
                    "coefficient has {} coordinates, the tower has degree {}",
                    cs.len(),
                    tower.degree()
                )));
            }
            Ok(tower.element(parse_rats(cs)?, ExtRat::Infinity)?)
        }
    }
}

impl MatrixSpec {
    pub fn build(&self) -> Result<RootDiffMatrix, CliError> {
        let mut pairs = Vec::with_capacity(self.entries.len());
        for (i, j, v) in &self.entries {
            if *i == 0 || *j == 0 || *i > self.n || *j > self.n {
                return Err(CliError::schema(format!("entry ({i}, {j}) outside roots 1..={}", self.n)));
            }
            pairs.push((i - 1, j - 1, v.parse::<ExtRat>()?));
        }
        RootDiffMatrix::from_pairs(self.n, &pairs).map_err(|e| CliError::Semantic(one_based(&e)))
    }
}

/// Matrix errors with roots numbered from 1, as in the payload.
fn one_based(e: &RamificationError) -> String {
    use RamificationError as E;
    match *e {
        E::NotSymmetric(i, j) => E::NotSymmetric(i + 1, j + 1),
        E::DiagonalNotInfinite(i) => E::DiagonalNotInfinite(i + 1),
        E::InfiniteEntry(i, j) => E::InfiniteEntry(i + 1, j + 1),
        E::NegativeEntry(i, j) => E::NegativeEntry(i + 1, j + 1),
        E::NotUltrametric(i, j, k) => E::NotUltrametric(i + 1, j + 1, k + 1),
        E::MissingEntry(i, j) => E::MissingEntry(i + 1, j + 1),
        E::ConflictingEntry(i, j) => E::ConflictingEntry(i + 1, j + 1),
        E::IndexOutOfRange(i) => E::IndexOutOfRange(i + 1),
        ref other => other.clone(),
    }
    .to_string()
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        if self.table.len() != self.order {
            return Err(CliError::schema(format!("table has {} rows, order is {}", self.table.len(), self.order)));
        }
        Ok(FiniteGroup::new(self.table.clone(), self.labels.clone())?)
    }
}

impl TorsorSpec {
    pub fn build(&self, group: &FiniteGroup) -> Result<Torsor, CliError> {
        Ok(Torsor::new(group, self.root_to_group.clone())?)
    }
}

impl FamilySpec {
    pub fn build(&self, group: &FiniteGroup) -> Result<Family, CliError> {
        let mut fam = Family::default();
        for obj in &self.objects {
            match obj {
                ObjectSpec::Regular => {
                    let idx = fam.add_object(GSet::regular(group));
                    fam.add_right_multiplications(group, idx);
                }
                ObjectSpec::Cosets { subgroup } => {
                    fam.add_object(GSet::cosets(group, subgroup)?);
                }
                ObjectSpec::Action { action } => {
                    fam.add_object(GSet::new(group, action.clone())?);
                }
                ObjectSpec::Coproduct { left, right } => {
                    let sum = fam.objects.len();
                    if *left >= sum || *right >= sum {
                        return Err(CliError::schema("coproduct must refer to earlier objects"));
                    }
                    fam.add_object(GSet::coproduct(&fam.objects[*left], &fam.objects[*right]));
                    fam.coproducts.push(Coproduct { left: *left, right: *right, sum });
                }
            }
        }
        for m in &self.morphisms {
            if m.source >= fam.objects.len() || m.target >= fam.objects.len() {
                return Err(CliError::schema(format!(
                    "morphism {} -> {} refers to a missing object",
                    m.source, m.target
                )));
            }
            fam.morphisms.push(Morphism { source: m.source, target: m.target, map: m.map.clone() });
        }
        Ok(fam)
    }
}

pub fn quotient(maps: &[Vec<usize>]) -> FiberQuotient {
    FiberQuotient { maps: maps.to_vec() }
}
