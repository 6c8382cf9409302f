//! JSON files: presentations, witnesses and classification lines.
//!
//! Elements are referenced by name everywhere; scalars are integer
//! exponents.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{BasisElem, GradedAlgebra};
use crate::classify::ClassTable;
use crate::cocycle::{validate_cocycle, Corrector};
use crate::division::DivisionAlgebra;
use crate::error::Error;
use crate::flag::FlagPresentation;
use crate::group::{build_abelian, validate_table, Group, GroupElem, Subgroup};
use crate::iso::{IsoWitness, MonomialMap, WitnessData};

pub const FORMAT_VERSION: u32 = 1;

/// Why a file could not be turned into a value; the three kinds have
/// distinct message prefixes.
#[derive(Debug)]
pub enum LoadError {
    File {
        path: String,
        message: String,
    },
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Validation {
        line: Option<usize>,
        error: Error,
    },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::File { path, message } => write!(f, "file error: {path}: {message}"),
            LoadError::Parse { line, column, message } => {
                write!(f, "parse error: line {line}, column {column}: {message}")
            }
            LoadError::Validation {
                line: Some(line),
                error,
            } => write!(f, "validation error: line {line}: {error}"),
            LoadError::Validation { line: None, error } => write!(f, "validation error: {error}"),
        }
    }
}

impl std::error::Error for LoadError {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Abelian {
        factors: Vec<usize>,
    },
    Table {
        names: Vec<String>,
        table: Vec<Vec<TableEntry>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DivisionSpec {
    Trivial,
    Pauli {
        t: usize,
        images: Vec<String>,
    },
    Twisted {
        support: Vec<String>,
        root_order: u64,
        values: Vec<Vec<u64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub v: u32,
    pub group: GroupSpec,
    pub division: DivisionSpec,
    pub blocks: Vec<usize>,
    pub tuple: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub from: (usize, usize, String),
    pub to: (usize, usize, String),
    pub scalar_exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub v: u32,
    pub g: String,
    pub sigma: Vec<usize>,
    pub h: Vec<String>,
    pub mu: Map<String, Value>,
    pub root_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Vec<u64>>,
    pub map: Vec<MapEntry>,
}

/// 1-based line of the first occurrence of `"key"` in `text`.
fn anchor(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|e| LoadError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })
}

fn check_version(v: u32, text: &str) -> Result<(), LoadError> {
    if v != FORMAT_VERSION {
        return Err(LoadError::Validation {
            line: anchor(text, "v"),
            error: Error::InvalidInput(format!("unsupported format version {v}, expected {FORMAT_VERSION}")),
        });
    }
    Ok(())
}

pub fn build_group(spec: &GroupSpec) -> crate::Result<Group> {
    match spec {
        GroupSpec::Abelian { factors } => build_abelian(factors),
        GroupSpec::Table { names, table } => {
            let rows = table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|entry| match entry {
                            TableEntry::Index(i) => Ok(*i),
                            TableEntry::Name(s) => names
                                .iter()
                                .position(|n| n == s)
                                .ok_or_else(|| Error::UnknownElement(s.clone())),
                        })
                        .collect::<crate::Result<Vec<usize>>>()
                })
                .collect::<crate::Result<Vec<_>>>()?;
            validate_table(names.clone(), rows)
        }
    }
}

fn names_to_elems(group: &Group, names: &[String]) -> crate::Result<Vec<GroupElem>> {
    names.iter().map(|n| group.by_name(n)).collect()
}

pub fn build_division(group: Arc<Group>, spec: &DivisionSpec) -> crate::Result<DivisionAlgebra> {
    match spec {
        DivisionSpec::Trivial => Ok(DivisionAlgebra::trivial(group)),
        DivisionSpec::Pauli { t, images } => {
            if images.len() != 2 {
                return Err(Error::InvalidEmbedding(format!(
                    "expected 2 generator images, got {}",
                    images.len()
                )));
            }
            let (u, v) = (group.by_name(&images[0])?, group.by_name(&images[1])?);
            DivisionAlgebra::pauli(*t, group, u, v)
        }
        DivisionSpec::Twisted {
            support,
            root_order,
            values,
        } => {
            let listed = names_to_elems(&group, support)?;
            let sub = Subgroup::from_members(&group, &listed)?;
            if values.len() != listed.len() || values.iter().any(|r| r.len() != listed.len()) {
                let n = listed.len();
                return Err(Error::InvalidCocycle(format!("value table must be {n}×{n}")));
            }
            // Reorder rows and columns from file order to sorted support order.
            let order: Vec<usize> = sub
                .members()
                .iter()
                .map(|m| listed.iter().position(|x| x == m).unwrap())
                .collect();
            let sorted = order
                .iter()
                .map(|&r| order.iter().map(|&c| values[r][c]).collect())
                .collect();
            Ok(DivisionAlgebra::twisted(validate_cocycle(
                group,
                sub,
                *root_order,
                sorted,
            )?))
        }
    }
}

pub fn build_presentation(file: &PresentationFile) -> crate::Result<FlagPresentation> {
    let group = Arc::new(build_group(&file.group)?);
    let division = build_division(group.clone(), &file.division)?;
    let tuple = names_to_elems(&group, &file.tuple)?;
    FlagPresentation::new(division, file.blocks.clone(), tuple)
}

/// The JSON key most likely responsible for a validation error.
fn key_for(error: &Error) -> &'static str {
    match error {
        Error::NotLatin(_) | Error::NotAssociative { .. } | Error::NoIdentity => "table",
        Error::InvalidCocycle(_) => "values",
        Error::InvalidEmbedding(_) => "images",
        Error::LengthMismatch { .. } | Error::UnknownElement(_) => "tuple",
        Error::SizeCap { .. } => "group",
        _ => "division",
    }
}

pub fn parse_presentation(text: &str) -> Result<FlagPresentation, LoadError> {
    let file: PresentationFile = parse(text)?;
    check_version(file.v, text)?;
    build_presentation(&file).map_err(|error| {
        let line = match &error {
            Error::InvalidInput(msg) if msg.contains("block") => anchor(text, "blocks"),
            Error::InvalidInput(_) => anchor(text, "group"),
            Error::UnknownElement(_) if !matches!(file.group, GroupSpec::Abelian { .. }) => {
                anchor(text, "tuple").or_else(|| anchor(text, "division"))
            }
            e => anchor(text, key_for(e)),
        };
        LoadError::Validation { line, error }
    })
}

pub fn load_presentation(path: &Path) -> Result<FlagPresentation, LoadError> {
    parse_presentation(&read(path)?)
}

pub fn group_spec(group: &Group) -> GroupSpec {
    match group.abelian_factors() {
        Some(f) => GroupSpec::Abelian { factors: f.to_vec() },
        None => GroupSpec::Table {
            names: group.names().to_vec(),
            table: group
                .table_rows()
                .into_iter()
                .map(|r| r.into_iter().map(TableEntry::Index).collect())
                .collect(),
        },
    }
}

pub fn division_spec(d: &DivisionAlgebra) -> DivisionSpec {
    if d.is_trivial() {
        return DivisionSpec::Trivial;
    }
    let group = d.group();
    DivisionSpec::Twisted {
        support: d
            .support()
            .members()
            .iter()
            .map(|&h| group.name(h).to_string())
            .collect(),
        root_order: d.root_order(),
        values: d.cocycle().rows(),
    }
}

pub fn presentation_file(p: &FlagPresentation) -> PresentationFile {
    PresentationFile {
        v: FORMAT_VERSION,
        group: group_spec(p.group()),
        division: division_spec(p.division()),
        blocks: p.shape().blocks().to_vec(),
        tuple: p.tuple_names(),
    }
}

pub fn presentation_to_json(p: &FlagPresentation) -> String {
    serde_json::to_string_pretty(&presentation_file(p)).expect("presentation serializes")
}

fn triple(a: &GradedAlgebra, idx: usize) -> (usize, usize, String) {
    let b = a.basis()[idx];
    (b.row + 1, b.col + 1, a.group().name(b.h).to_string())
}

pub fn witness_file(w: &IsoWitness, p: &FlagPresentation, a: &GradedAlgebra, a2: &GradedAlgebra) -> WitnessFile {
    let group = p.group();
    let mut mu = Map::new();
    for &h in w.mu.support().members() {
        mu.insert(group.name(h).to_string(), json!(w.mu.value(h)));
    }
    let map = w
        .map
        .images
        .iter()
        .enumerate()
        .map(|(k, &(t, e))| MapEntry {
            from: triple(a, k),
            to: triple(a2, t),
            scalar_exp: e,
        })
        .collect();
    WitnessFile {
        v: FORMAT_VERSION,
        g: group.name(w.shift).to_string(),
        sigma: w.sigma.iter().map(|s| s + 1).collect(),
        h: w.h.iter().map(|&x| group.name(x).to_string()).collect(),
        mu,
        root_order: w.root_order(),
        scale: w.scale.iter().any(|&s| s != 0).then(|| w.scale.clone()),
        map,
    }
}

pub fn witness_to_json(w: &IsoWitness, p: &FlagPresentation, a: &GradedAlgebra, a2: &GradedAlgebra) -> String {
    serde_json::to_string_pretty(&witness_file(w, p, a, a2)).expect("witness serializes")
}

/// A witness file resolved against the two presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedWitness {
    pub data: WitnessData,
    pub map: MonomialMap,
}

fn resolve_basis(a: &GradedAlgebra, (i, j, h): &(usize, usize, String)) -> crate::Result<usize> {
    let bad = || Error::InvalidWitness(format!("({i},{j},{h}) is not a basis element"));
    if *i == 0 || *j == 0 {
        return Err(bad());
    }
    let h = a.group().by_name(h)?;
    a.index_of(&BasisElem {
        row: i - 1,
        col: j - 1,
        h,
    })
    .ok_or_else(bad)
}

pub fn resolve_witness(
    file: &WitnessFile,
    p: &FlagPresentation,
    a: &GradedAlgebra,
    a2: &GradedAlgebra,
) -> crate::Result<LoadedWitness> {
    let group = p.group();
    let order = file.root_order;
    if order == 0 {
        return Err(Error::InvalidWitness("root_order must be positive".into()));
    }
    let shift = group.by_name(&file.g)?;
    if file.sigma.contains(&0) {
        return Err(Error::InvalidWitness("sigma is 1-based".into()));
    }
    let sigma = file.sigma.iter().map(|s| s - 1).collect();
    let h = names_to_elems(group, &file.h)?;
    let support = p.division().support();
    let mut values = vec![0; support.order()];
    for (name, v) in &file.mu {
        let x = group.by_name(name)?;
        let pos = support
            .position(x)
            .ok_or_else(|| Error::InvalidWitness(format!("mu is keyed by {name}, outside the support")))?;
        values[pos] = v
            .as_u64()
            .ok_or_else(|| Error::InvalidWitness(format!("mu({name}) is not an exponent")))?
            % order;
    }
    let mu = Corrector::new(support.clone(), order, values);
    let scale = file.scale.clone().unwrap_or_else(|| vec![0; p.n()]);
    let mut images = vec![None; a.dim()];
    for entry in &file.map {
        let from = resolve_basis(a, &entry.from)?;
        let to = resolve_basis(a2, &entry.to)?;
        if images[from].replace((to, entry.scalar_exp % order)).is_some() {
            return Err(Error::InvalidWitness(format!("{} is mapped twice", a.label(from))));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(k, x)| x.ok_or_else(|| Error::InvalidWitness(format!("{} has no image", a.label(k)))))
        .collect::<crate::Result<_>>()?;
    Ok(LoadedWitness {
        data: WitnessData {
            shift,
            sigma,
            h,
            mu,
            scale,
        },
        map: MonomialMap {
            images,
            root_order: order,
        },
    })
}

pub fn parse_witness_file(text: &str) -> Result<WitnessFile, LoadError> {
    let file: WitnessFile = parse(text)?;
    check_version(file.v, text)?;
    Ok(file)
}

pub fn load_witness_file(path: &Path) -> Result<WitnessFile, LoadError> {
    parse_witness_file(&read(path)?)
}

/// One JSON line per class, in table order.
pub fn class_lines(table: &ClassTable, group: &Group) -> Vec<String> {
    table
        .classes
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let names: Vec<&str> = c.representative.iter().map(|&x| group.name(x)).collect();
            json!({
                "class": k + 1,
                "group": table.group,
                "blocks": table.blocks,
                "division": table.division,
                "representative": names,
                "orbit_size": c.orbit_size,
            })
            .to_string()
        })
        .collect()
}
