use std::fs;
use std::path::{Path, PathBuf};

use maxsub::catalog::{self, CatalogError, CatalogKey};
use maxsub::exact::ScalarMode;
use maxsub::maximality::MaximalityError;
use maxsub::polyfield::{parse_field, PolyFieldError, PolyVectorField, Space};
use maxsub::repanalysis::RepError;
use maxsub::subalgebra::{close_under_bracket, Caps, Subalgebra, SubalgebraError};
use maxsub::symtensor::SymTensorError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {source}")]
    Line { path: PathBuf, line: usize, source: PolyFieldError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Field(#[from] PolyFieldError),
    #[error(transparent)]
    Tensor(#[from] SymTensorError),
    #[error(transparent)]
    Subalgebra(#[from] SubalgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Maximality(#[from] MaximalityError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// `n=3` or `3`.
pub fn parse_space_flag(s: &str) -> Result<usize, String> {
    let v = s.strip_prefix("n=").unwrap_or(s);
    match v.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected n=<positive integer>, got `{s}`")),
    }
}

pub fn space(n: Option<usize>, mode: ScalarMode) -> Result<Space, CliError> {
    let n = n.ok_or_else(|| CliError::Usage("--space n=<int> is required here".into()))?;
    Ok(Space::new(n, mode)?)
}

/// Fields from a file: one per line, `#` starts a comment.
pub fn read_fields(path: &Path, space: Space) -> Result<Vec<PolyVectorField>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let x = parse_field(body, space).map_err(|source| CliError::Line { path: path.to_path_buf(), line: i + 1, source })?;
        out.push(x);
    }
    Ok(out)
}

pub struct Loaded {
    pub label: String,
    pub algebra: Subalgebra,
}

/// A catalog key or a generator file, closed under the bracket.
pub fn load_algebra(input: &str, n: Option<usize>, mode: ScalarMode, caps: Caps) -> Result<Loaded, CliError> {
    if input.starts_with("catalog:") {
        let key: CatalogKey = input.parse()?;
        let space = match n {
            Some(n) => Space::new(n, mode)?,
            None => key.space(mode),
        };
        return Ok(Loaded { label: key.to_string(), algebra: catalog::build(&key, space)? });
    }
    let space = space(n, mode)?;
    let gens = read_fields(Path::new(input), space)?;
    Ok(Loaded { label: input.to_string(), algebra: close_under_bracket(space, &gens, caps)? })
}
