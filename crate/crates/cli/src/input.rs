use lts_uce::algebra::{catalog, Algebra};
use lts_uce::fields::FieldSpec;
use lts_uce::format::parse_algebra_or_report;

use crate::Failure;

/// Loads `catalog:NAME` (over `field`, default `Q`) or a JSON file. Files
/// carry their own field, so `field` must be absent for them.
pub fn load(spec: &str, field: Option<FieldSpec>) -> Result<Algebra, Failure> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let g = catalog(name, field.unwrap_or(FieldSpec::Rationals))?;
        return Ok(Algebra::Binary(g));
    }
    if field.is_some() {
        return Err(Failure::new(3, "--field applies to catalog inputs only; files declare their field"));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::new(2, format!("{spec}: {e}")))?;
    Ok(parse_algebra_or_report(&text)?)
}
