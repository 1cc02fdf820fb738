//! Parsing of field elements, combiners and sweep scopes from the command
//! line.

use bentforge::constructions::{CombinerF, SweepScope};
use bentforge::gf2m::{parse_poly_hex, FieldElement, FieldSpec};

/// Accepts `w^k` (a power of the field generator), `w`, `0xHEX` (a raw
/// residue) or a plain decimal residue value.
pub fn parse_element(field: &FieldSpec, s: &str) -> Result<FieldElement, String> {
    let t = s.trim();
    if t == "w" {
        return Ok(field.generator());
    }
    if let Some(exp) = t.strip_prefix("w^") {
        let k: i64 = exp.parse().map_err(|e| format!("bad exponent in `{s}`: {e}"))?;
        return Ok(field.gen_pow(k));
    }
    let v = if t.starts_with("0x") || t.starts_with("0X") {
        parse_poly_hex(t).map_err(|e| e.to_string())?
    } else {
        t.parse::<u32>().map_err(|e| format!("bad element `{s}`: {e}"))?
    };
    if v >= field.size() {
        return Err(format!("element `{s}` out of range for m={}", field.m()));
    }
    Ok(FieldElement(v as u16))
}

/// Accepts the named combiners `x1`, `x1x2`, `maj3`, `x1x2x3`, or an
/// explicit `<arity>:<hex-table>` such as `3:0xE8`.
pub fn parse_combiner(s: &str) -> Result<CombinerF, String> {
    match s.trim() {
        "x1" => return Ok(CombinerF::single()),
        "x1x2" => return Ok(CombinerF::product2()),
        "maj3" => return Ok(CombinerF::majority3()),
        "x1x2x3" => return Ok(CombinerF::product3()),
        other => {
            if let Some((t, table)) = other.split_once(':') {
                let t: u32 = t.parse().map_err(|e| format!("bad arity in `{s}`: {e}"))?;
                let bits = parse_poly_hex(table).map_err(|e| e.to_string())?;
                return CombinerF::new(t, bits).map_err(|e| e.to_string());
            }
            Err(format!(
                "unknown combiner `{s}`: use x1, x1x2, maj3, x1x2x3 or <arity>:<hex-table>"
            ))
        }
    }
}

/// Accepts `exhaustive` or `sample:<count>`.
pub fn parse_scope(s: &str) -> Result<SweepScope, String> {
    match s.trim() {
        "exhaustive" => Ok(SweepScope::Exhaustive),
        other => {
            if let Some(k) = other.strip_prefix("sample:") {
                let k: u64 = k.parse().map_err(|e| format!("bad sample count in `{s}`: {e}"))?;
                return Ok(SweepScope::Sample(k));
            }
            Err(format!("unknown scope `{s}`: use exhaustive or sample:<count>"))
        }
    }
}

/// Human-readable scope tag recorded in output metadata.
pub fn scope_tag(scope: SweepScope) -> String {
    match scope {
        SweepScope::Exhaustive => "exhaustive".to_string(),
        SweepScope::Sample(k) => format!("sample:{k}"),
    }
}
