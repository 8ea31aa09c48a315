use std::fmt::Write as _;

use serde::Serialize;

use super::OutputFormat;
use crate::characters::CharacterGroup;
use crate::error::{Error, Result};

/// Largest modulus accepted by [`character_table`].
pub const CHAR_TABLE_BOUND: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterRow {
    pub chi: String,
    pub conductor: u64,
    pub order: u64,
    pub primitive: bool,
    /// `χ(k)` for `k = 1..=n`, as `num/den` turns or `0`.
    pub values: Vec<String>,
}

/// Every character mod `n` with its values on `1..=n`, in enumeration order.
pub fn character_table(n: u64) -> Result<Vec<CharacterRow>> {
    if n == 0 {
        return Err(Error::Domain("modulus must be at least 1".into()));
    }
    if n > CHAR_TABLE_BOUND {
        return Err(Error::Resource(format!(
            "modulus {n} exceeds the table bound {CHAR_TABLE_BOUND}"
        )));
    }
    let group = CharacterGroup::new(n)?;
    Ok(group
        .characters()
        .map(|chi| CharacterRow {
            chi: chi.label(),
            conductor: chi.conductor(),
            order: chi.order(),
            primitive: chi.is_primitive(),
            values: (1..=n).map(|k| chi.eval(k).to_string()).collect(),
        })
        .collect())
}

pub fn format_character_table(n: u64, rows: &[CharacterRow], format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut v = serde_json::to_vec_pretty(rows).expect("tables serialize");
            v.push(b'\n');
            v
        }
        OutputFormat::Csv | OutputFormat::Text => {
            let sep = if format == OutputFormat::Csv {
                ","
            } else {
                " "
            };
            let mut out = String::new();
            let mut header = vec![
                "chi".to_string(),
                "conductor".into(),
                "order".into(),
                "primitive".into(),
            ];
            header.extend((1..=n).map(|k| k.to_string()));
            out.push_str(&header.join(sep));
            out.push('\n');
            for row in rows {
                let chi = if format == OutputFormat::Csv {
                    format!("\"{}\"", row.chi)
                } else {
                    row.chi.clone()
                };
                let _ = write!(
                    out,
                    "{chi}{sep}{}{sep}{}{sep}{}",
                    row.conductor, row.order, row.primitive
                );
                for v in &row.values {
                    out.push_str(sep);
                    out.push_str(v);
                }
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_five() {
        let rows = character_table(5).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].values, ["0/1", "0/1", "0/1", "0/1", "0"]);
        assert!(!rows[0].primitive);
        assert!(rows[1..].iter().all(|r| r.primitive && r.conductor == 5));
        let csv = String::from_utf8(format_character_table(5, &rows, OutputFormat::Csv)).unwrap();
        assert_eq!(
            csv.lines().next().unwrap(),
            "chi,conductor,order,primitive,1,2,3,4,5"
        );
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn bounds() {
        assert!(matches!(character_table(0), Err(Error::Domain(_))));
        assert!(matches!(character_table(1001), Err(Error::Resource(_))));
    }
}
