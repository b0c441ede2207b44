use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::brackets::{DeformedPoissonStructure, MetriplecticSystem, NamedPolynomial, SystemError};
use crate::multivector::{BivectorField, CoordinateChart};
use crate::parser::expr::{parse_expression_at, ParseError};
use crate::poly::Polynomial;
use crate::scalar::parse_rational;
use crate::verify::{check_casimir, check_cocycle, check_jacobi, check_metriplectic_axioms, VerificationReport};
use crate::Rational;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located<T> {
    pub value: T,
    pub loc: Loc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEntry {
    pub i: Located<String>,
    pub j: Located<String>,
    pub expr: Located<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedEntry {
    pub name: Located<String>,
    pub expr: Located<String>,
}

/// Raw contents of a model file before any expression is parsed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelFile {
    pub name: Option<Located<String>>,
    pub coordinates: Vec<Located<String>>,
    pub coordinates_loc: Option<Loc>,
    pub bivector: Vec<PairEntry>,
    pub cocycle: Option<Vec<PairEntry>>,
    pub casimirs: Vec<NamedEntry>,
    pub extended_casimirs: Vec<NamedEntry>,
    pub hamiltonian: Option<Located<String>>,
    pub entropy: Option<Located<String>>,
    pub tau: Option<Located<String>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelFileError {
    #[error("{loc}: {message}")]
    Syntax { loc: Loc, message: String },
    #[error("{0}")]
    Expression(ParseError),
    #[error("{loc}: pair ({i}, {j}) listed twice in section {section}")]
    DuplicatePair { loc: Loc, section: String, i: String, j: String },
    #[error("{loc}: pair ({name}, {name}) is on the diagonal")]
    SelfPair { loc: Loc, name: String },
    #[error("{loc}: unknown coordinate '{name}'")]
    UnknownCoordinate { loc: Loc, name: String },
    #[error("{loc}: duplicate {what} '{name}'")]
    Duplicate { loc: Loc, what: String, name: String },
    #[error("missing 'coordinates' declaration")]
    MissingCoordinates,
    #[error("{loc}: malformed rational '{text}' for tau")]
    MalformedTau { loc: Loc, text: String },
    #[error("bivector fails the Jacobi identity:\n{residual}")]
    JacobiFailure { residual: String },
    #[error("cocycle conditions fail:\n{residual}")]
    CocycleFailure { residual: String },
    #[error("{0}")]
    EntropyNotCasimir(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ModelFileError {
    /// Stable error class, as written in the conformance fixtures.
    pub fn class(&self) -> &'static str {
        match self {
            ModelFileError::Syntax { .. } => "syntax",
            ModelFileError::Expression(e) => e.kind.class(),
            ModelFileError::DuplicatePair { .. } => "duplicate_pair",
            ModelFileError::SelfPair { .. } => "self_pair",
            ModelFileError::UnknownCoordinate { .. } => "unknown_coordinate",
            ModelFileError::Duplicate { .. } => "duplicate_declaration",
            ModelFileError::MissingCoordinates => "missing_coordinates",
            ModelFileError::MalformedTau { .. } => "malformed_rational",
            ModelFileError::JacobiFailure { .. } => "jacobi_failure",
            ModelFileError::CocycleFailure { .. } => "cocycle_failure",
            ModelFileError::EntropyNotCasimir(_) => "entropy_not_casimir",
            ModelFileError::Io { .. } => "io",
        }
    }

    /// 1 for verification failures, 2 for anything that stops the file
    /// from being read or parsed.
    pub fn exit_code(&self) -> i32 {
        match self {
            ModelFileError::JacobiFailure { .. }
            | ModelFileError::CocycleFailure { .. }
            | ModelFileError::EntropyNotCasimir(_) => 1,
            _ => 2,
        }
    }
}

impl From<ParseError> for ModelFileError {
    fn from(e: ParseError) -> Self {
        ModelFileError::Expression(e)
    }
}

const SECTIONS: [&str; 4] = ["bivector", "cocycle", "casimirs", "extended_casimirs"];
const KEYS: [&str; 5] = ["name", "coordinates", "hamiltonian", "entropy", "tau"];

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Column (1-based) of byte offset `off` in `line`.
fn col_of(line: &str, off: usize) -> usize {
    line[..off].chars().count() + 1
}

/// Byte offset of the first non-space character at or after `off`.
fn skip_ws(line: &str, off: usize) -> usize {
    off + (line[off..].len() - line[off..].trim_start().len())
}

fn located(line: &str, lineno: usize, off: usize, text: &str) -> Located<String> {
    let start = skip_ws(line, off);
    Located { value: text.trim().to_string(), loc: Loc { line: lineno, column: col_of(line, start) } }
}

/// Splits the file into keys, sections and entries. Expressions are kept as
/// text with their positions.
pub fn parse_model_text(text: &str) -> Result<ModelFile, ModelFileError> {
    let mut file = ModelFile::default();
    let mut current: Option<(String, Loc)> = None;
    let mut seen_keys = HashSet::new();
    let mut seen_sections = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let first = Loc { line: lineno, column: col_of(line, skip_ws(line, 0)) };
        if let Some((section, _)) = &current {
            if trimmed == "}" {
                current = None;
                continue;
            }
            let section = section.clone();
            parse_entry(&mut file, &section, line, lineno, first)?;
            continue;
        }
        if let Some(head) = trimmed.strip_suffix('{') {
            let head = head.trim();
            if !SECTIONS.contains(&head) {
                return Err(ModelFileError::Syntax { loc: first, message: format!("unknown section '{head}'") });
            }
            if !seen_sections.insert(head.to_string()) {
                return Err(ModelFileError::Duplicate { loc: first, what: "section".into(), name: head.into() });
            }
            if head == "cocycle" {
                file.cocycle = Some(Vec::new());
            }
            current = Some((head.to_string(), first));
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(ModelFileError::Syntax { loc: first, message: "expected 'key = value' or 'section {'".into() });
        };
        let key = line[..eq].trim();
        if !KEYS.contains(&key) {
            return Err(ModelFileError::Syntax { loc: first, message: format!("unknown key '{key}'") });
        }
        if !seen_keys.insert(key.to_string()) {
            return Err(ModelFileError::Duplicate { loc: first, what: "key".into(), name: key.into() });
        }
        let value = located(line, lineno, eq + 1, &line[eq + 1..]);
        match key {
            "name" => file.name = Some(value),
            "hamiltonian" => file.hamiltonian = Some(value),
            "entropy" => file.entropy = Some(value),
            "tau" => file.tau = Some(value),
            _ => {
                file.coordinates_loc = Some(first);
                let mut off = eq + 1;
                for part in line[eq + 1..].split(',') {
                    let name = located(line, lineno, off, part);
                    off += part.len() + 1;
                    if !is_name(&name.value) {
                        return Err(ModelFileError::Syntax {
                            loc: name.loc,
                            message: format!("invalid coordinate name '{}'", name.value),
                        });
                    }
                    if file.coordinates.iter().any(|c| c.value == name.value) {
                        return Err(ModelFileError::Duplicate {
                            loc: name.loc,
                            what: "coordinate".into(),
                            name: name.value,
                        });
                    }
                    file.coordinates.push(name);
                }
            }
        }
    }
    if let Some((section, loc)) = current {
        return Err(ModelFileError::Syntax { loc, message: format!("section '{section}' is not closed") });
    }
    Ok(file)
}

fn parse_entry(
    file: &mut ModelFile,
    section: &str,
    line: &str,
    lineno: usize,
    first: Loc,
) -> Result<(), ModelFileError> {
    let Some(eq) = line.find('=') else {
        return Err(ModelFileError::Syntax { loc: first, message: "expected an entry with '='".into() });
    };
    let expr = located(line, lineno, eq + 1, &line[eq + 1..]);
    let lhs = &line[..eq];
    match section {
        "bivector" | "cocycle" => {
            let Some(comma) = lhs.find(',') else {
                return Err(ModelFileError::Syntax { loc: first, message: "expected 'i, j = expression'".into() });
            };
            let i = located(line, lineno, 0, &lhs[..comma]);
            let j = located(line, lineno, comma + 1, &lhs[comma + 1..]);
            for name in [&i, &j] {
                if !is_name(&name.value) {
                    return Err(ModelFileError::Syntax {
                        loc: name.loc,
                        message: format!("invalid coordinate name '{}'", name.value),
                    });
                }
            }
            let entry = PairEntry { i, j, expr };
            if section == "bivector" {
                file.bivector.push(entry);
            } else {
                file.cocycle.get_or_insert_with(Vec::new).push(entry);
            }
        }
        _ => {
            let name = located(line, lineno, 0, lhs);
            if !is_name(&name.value) {
                return Err(ModelFileError::Syntax {
                    loc: name.loc,
                    message: format!("invalid name '{}'", name.value),
                });
            }
            let list = if section == "casimirs" { &mut file.casimirs } else { &mut file.extended_casimirs };
            if list.iter().any(|e| e.name.value == name.value) {
                return Err(ModelFileError::Duplicate { loc: name.loc, what: "casimir".into(), name: name.value });
            }
            list.push(NamedEntry { name, expr });
        }
    }
    Ok(())
}

fn parse_expr(chart: &CoordinateChart, e: &Located<String>) -> Result<Polynomial<Rational>, ModelFileError> {
    Ok(parse_expression_at(&e.value, chart, e.loc.line, e.loc.column)?)
}

fn build_bivector(
    chart: &CoordinateChart,
    section: &str,
    entries: &[PairEntry],
) -> Result<BivectorField<Rational>, ModelFileError> {
    let mut out = BivectorField::zero(chart);
    let mut seen = HashSet::new();
    for e in entries {
        let mut idx = [0usize; 2];
        for (slot, name) in idx.iter_mut().zip([&e.i, &e.j]) {
            *slot = chart
                .index_of(&name.value)
                .ok_or_else(|| ModelFileError::UnknownCoordinate { loc: name.loc, name: name.value.clone() })?;
        }
        let [i, j] = idx;
        if i == j {
            return Err(ModelFileError::SelfPair { loc: e.i.loc, name: e.i.value.clone() });
        }
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(ModelFileError::DuplicatePair {
                loc: e.i.loc,
                section: section.into(),
                i: e.i.value.clone(),
                j: e.j.value.clone(),
            });
        }
        let value = parse_expr(chart, &e.expr)?;
        out.set(i, j, value).expect("indices checked above");
    }
    Ok(out)
}

/// A loaded model: the system and the report of every check run on it.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub name: String,
    pub system: MetriplecticSystem<Rational>,
    pub report: VerificationReport,
}

/// Builds and verifies a model from file text. Jacobi and cocycle failures
/// reject the model; Casimir and axiom failures are left in the report.
pub fn load_model_str(text: &str, default_name: &str, seed: u64) -> Result<LoadedModel, ModelFileError> {
    let file = parse_model_text(text)?;
    if file.coordinates.is_empty() {
        return Err(ModelFileError::MissingCoordinates);
    }
    let chart = CoordinateChart::new(file.coordinates.iter().map(|c| c.value.as_str()))
        .map_err(|_| ModelFileError::MissingCoordinates)?;
    let n = chart.dim();
    let base = build_bivector(&chart, "bivector", &file.bivector)?;
    let cocycle = match &file.cocycle {
        Some(entries) => Some(build_bivector(&chart, "cocycle", entries)?),
        None => None,
    };
    let named = |entries: &[NamedEntry]| -> Result<Vec<NamedPolynomial<Rational>>, ModelFileError> {
        entries.iter().map(|e| Ok(NamedPolynomial::new(e.name.value.clone(), parse_expr(&chart, &e.expr)?))).collect()
    };
    let casimirs = named(&file.casimirs)?;
    let extended = named(&file.extended_casimirs)?;
    let optional = |e: &Option<Located<String>>| match e {
        Some(e) => parse_expr(&chart, e),
        None => Ok(Polynomial::zero(n)),
    };
    let hamiltonian = optional(&file.hamiltonian)?;
    let entropy = optional(&file.entropy)?;
    let tau = match &file.tau {
        Some(t) => parse_rational(&t.value)
            .ok_or_else(|| ModelFileError::MalformedTau { loc: t.loc, text: t.value.clone() })?,
        None => Rational::from_integer(1.into()),
    };
    let name = file.name.map(|n| n.value).unwrap_or_else(|| default_name.to_string());

    let mut report = VerificationReport::new(name.clone()).with_seed(seed);
    let jacobi = check_jacobi(&base);
    if !jacobi.passed() {
        let residual = jacobi.failures().map(|c| c.residual.clone()).collect::<Vec<_>>().join("\n");
        return Err(ModelFileError::JacobiFailure { residual });
    }
    report.absorb("jacobi", jacobi);
    let structure = match cocycle {
        Some(a) => {
            let r = check_cocycle(&base, &a).expect("same chart");
            if !r.passed() {
                let residual =
                    r.failures().map(|c| format!("{}:\n{}", c.name, c.residual)).collect::<Vec<_>>().join("\n");
                return Err(ModelFileError::CocycleFailure { residual });
            }
            report.absorb("cocycle", r);
            DeformedPoissonStructure::new(base, a).expect("same chart")
        }
        None => DeformedPoissonStructure::undeformed(base),
    };
    let deformed = structure.deformed();
    for c in &casimirs {
        report.absorb(&format!("casimir {}", c.name), check_casimir(structure.base(), &c.poly).expect("same chart"));
    }
    for c in &extended {
        report.absorb(&format!("extended casimir {}", c.name), check_casimir(&deformed, &c.poly).expect("same chart"));
    }
    let system = MetriplecticSystem::new(structure, hamiltonian, entropy)
        .and_then(|s| s.with_casimirs(casimirs))
        .and_then(|s| s.with_extended_casimirs(extended))
        .map_err(|e| match e {
            SystemError::EntropyNotCasimir { .. } => ModelFileError::EntropyNotCasimir(e.to_string()),
            other => ModelFileError::Syntax { loc: Loc { line: 1, column: 1 }, message: other.to_string() },
        })?
        .with_tau(tau);
    report.absorb("", check_metriplectic_axioms(&system, seed));
    Ok(LoadedModel { name, system, report })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<LoadedModel, ModelFileError> {
    load_model_with_seed(path, DEFAULT_SEED)
}

pub fn load_model_with_seed(path: impl AsRef<Path>, seed: u64) -> Result<LoadedModel, ModelFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelFileError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("model");
    load_model_str(&text, stem, seed)
}
