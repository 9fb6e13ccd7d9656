//! File formats for multiplication tables.
//!
//! The JSON form is
//!
//! ```json
//! {"version":1, "group":"heisenberg:5", "identity":[1,0,0], "table":[...]}
//! ```
//!
//! with `table` the row-major list of `n * n` element indices. The CSV form
//! has a header row of element labels and one row per left factor.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupDescriptor};
use crate::nearring::Nearring;

pub const TABLE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub version: u32,
    pub group: GroupDescriptor,
    pub identity: Option<Element>,
    pub table: Vec<u32>,
}

impl TableFile {
    pub fn from_nearring(r: &Nearring) -> TableFile {
        TableFile {
            version: TABLE_VERSION,
            group: r.descriptor(),
            identity: r.identity(),
            table: r.table().to_vec(),
        }
    }

    /// Validates shape, closure and the declared identity.
    pub fn into_nearring(self, group: Option<Arc<Group>>) -> Result<Nearring> {
        if self.version != TABLE_VERSION {
            return Err(Error::Parse(format!(
                "field `version`: expected {TABLE_VERSION}, found {}",
                self.version
            )));
        }
        let group = match group {
            Some(g) if g.descriptor() == self.group => g,
            Some(g) => {
                return Err(Error::CarrierMismatch(format!(
                    "table is on {}, expected {}",
                    self.group,
                    g.descriptor()
                )))
            }
            None => Arc::new(Group::new(self.group)?),
        };
        let r = Nearring::from_table(group, self.table)?;
        match self.identity {
            Some(e) => r.with_identity(&e),
            None => Ok(r),
        }
    }
}

pub fn to_json(r: &Nearring) -> String {
    serde_json::to_string(&TableFile::from_nearring(r)).expect("table files always serialise")
}

/// Parses a table file; syntax and field errors carry line and column.
pub fn from_json(text: &str) -> Result<Nearring> {
    let file: TableFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("table file: {e}")))?;
    file.into_nearring(None)
}

pub fn write_table(path: &Path, r: &Nearring) -> Result<()> {
    fs::write(path, to_json(r))?;
    Ok(())
}

pub fn read_table(path: &Path) -> Result<Nearring> {
    let text = fs::read_to_string(path)?;
    from_json(&text).map(|r| {
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        r.with_label(label)
    })
}

/// Cayley table as CSV, products written as element labels.
pub fn to_csv(r: &Nearring) -> Result<String> {
    let g = r.group();
    let n = r.order();
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = std::iter::once(format!("{}", r.descriptor()))
        .chain(g.elements().iter().map(|e| e.to_string()))
        .collect();
    w.write_record(&header).map_err(csv_err)?;
    for x in 0..n {
        let row: Vec<String> = std::iter::once(g.element(x).to_string())
            .chain((0..n).map(|y| g.element(r.mul(x, y)).to_string()))
            .collect();
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("labels are ascii"))
}

/// Reads the CSV form back into a table on the group named in the corner cell.
pub fn from_csv(text: &str) -> Result<Nearring> {
    let mut rd = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut records = rd.records();
    let header = records
        .next()
        .ok_or_else(|| Error::Parse("csv: empty input".into()))?
        .map_err(csv_err)?;
    let desc: GroupDescriptor = header
        .get(0)
        .ok_or_else(|| Error::Parse("csv: missing group cell".into()))?
        .parse()?;
    let group = Arc::new(Group::new(desc)?);
    let n = group.order();
    let mut table = vec![0u32; n * n];
    let col: Vec<usize> = header
        .iter()
        .skip(1)
        .map(|c| group.index(&c.parse()?))
        .collect::<Result<_>>()?;
    let mut seen_rows = 0;
    for (line, rec) in records.enumerate() {
        let rec = rec.map_err(csv_err)?;
        let at = |k: usize| {
            rec.get(k)
                .ok_or_else(|| Error::Parse(format!("csv line {}: missing column {k}", line + 2)))
        };
        let x = group.index(&at(0)?.parse()?)?;
        for (k, &y) in col.iter().enumerate() {
            let v = group.index(&at(k + 1)?.parse()?)?;
            table[x * n + y] = v as u32;
        }
        seen_rows += 1;
    }
    if seen_rows != n || col.len() != n {
        return Err(Error::TableShape {
            found: seen_rows * col.len(),
            expected: n * n,
        });
    }
    Nearring::from_table(group, table)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Carrier, FamilySpec, Variant};

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = build(FamilySpec::new(Carrier::G1, Variant::Constant), 3).unwrap();
        let s = to_json(&r);
        assert!(s.starts_with(r#"{"version":1,"group":"heisenberg:3","identity":[1,0,0],"table":["#));
        let back = from_json(&s).unwrap();
        assert!(back.agrees_with(&r));
        assert_eq!(to_json(&back), s);
    }

    #[test]
    fn csv_round_trip() {
        let r = build(FamilySpec::new(Carrier::G3, Variant::Twisted), 3).unwrap();
        let c = to_csv(&r).unwrap();
        assert!(c.starts_with("metacyclic-abelian:3,\"[0,0]\""));
        assert!(from_csv(&c).unwrap().agrees_with(&r));
    }

    #[test]
    fn corrupted_entry_is_a_closure_error() {
        let r = build(FamilySpec::new(Carrier::G1, Variant::Constant), 3).unwrap();
        let mut f = TableFile::from_nearring(&r);
        f.table[7] = 99;
        let s = serde_json::to_string(&f).unwrap();
        assert!(matches!(from_json(&s), Err(Error::NotClosed { entry: 7, .. })));
    }

    #[test]
    fn schema_errors_name_the_field() {
        let bad = r#"{"version":1,"group":"heisenberg:3","identity":null,"tabel":[]}"#;
        let e = from_json(bad).unwrap_err().to_string();
        assert!(e.contains("tabel") && e.contains("line 1"), "{e}");
        let v2 = r#"{"version":2,"group":"heisenberg:3","identity":null,"table":[]}"#;
        assert!(from_json(v2).unwrap_err().to_string().contains("version"));
        let wrong_id = to_json(&build(FamilySpec::new(Carrier::G1, Variant::Constant), 3).unwrap())
            .replace("[1,0,0]", "[0,1,0]");
        assert!(matches!(from_json(&wrong_id), Err(Error::InvalidIdentity(_))));
    }
}
