//! Record types and serialization for scan output.
//!
//! Records are byte-deterministic: residues render as decimal strings,
//! rationals in lowest terms, and the caller sorts before writing. Wall
//! times never enter the record stream; they go to the stderr summary.

use std::env;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use supercong_core::{CongruenceVerdict, IdentityVerdict, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Difference valuation as it appears on the wire: an integer, or "inf" for
/// an exactly vanishing difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VDiff {
    Finite(i64),
    Inf,
}

impl From<Valuation> for VDiff {
    fn from(v: Valuation) -> VDiff {
        match v {
            Valuation::Finite(n) => VDiff::Finite(n),
            Valuation::Infinity => VDiff::Inf,
        }
    }
}

impl fmt::Display for VDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VDiff::Finite(n) => write!(f, "{n}"),
            VDiff::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for VDiff {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            VDiff::Finite(n) => serializer.serialize_i64(*n),
            VDiff::Inf => serializer.serialize_str("inf"),
        }
    }
}

struct VDiffVisitor;

impl Visitor<'_> for VDiffVisitor {
    type Value = VDiff;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or the string \"inf\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<VDiff, E> {
        Ok(VDiff::Finite(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<VDiff, E> {
        i64::try_from(v)
            .map(VDiff::Finite)
            .map_err(|_| E::custom("valuation out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<VDiff, E> {
        if v == "inf" {
            Ok(VDiff::Inf)
        } else {
            Err(E::custom("expected \"inf\""))
        }
    }
}

impl<'de> Deserialize<'de> for VDiff {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<VDiff, D::Error> {
        deserializer.deserialize_any(VDiffVisitor)
    }
}

/// One congruence check, as written to the record stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceRecord {
    pub family: String,
    pub p: u64,
    pub k: u32,
    pub lhs: String,
    pub rhs: String,
    pub v_diff: VDiff,
    pub pass: bool,
}

impl From<&CongruenceVerdict> for CongruenceRecord {
    fn from(v: &CongruenceVerdict) -> CongruenceRecord {
        CongruenceRecord {
            family: v.family.tag().to_string(),
            p: v.p,
            k: v.k,
            lhs: v.lhs.value().to_string(),
            rhs: v.rhs.value().to_string(),
            v_diff: v.diff_valuation.into(),
            pass: v.pass,
        }
    }
}

/// One exact identity check, as written to the record stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl From<&IdentityVerdict> for IdentityRecord {
    fn from(v: &IdentityVerdict) -> IdentityRecord {
        IdentityRecord {
            name: v.name.tag().to_string(),
            n: v.n,
            lhs: v.lhs.to_string(),
            rhs: v.rhs.to_string(),
            pass: v.pass,
        }
    }
}

pub const CONGRUENCE_CSV_HEADER: &str = "family,p,k,lhs,rhs,v_diff,pass";
pub const IDENTITY_CSV_HEADER: &str = "name,n,lhs,rhs,pass";

/// Render congruence records; every field is digits, lowercase tags, or
/// "inf", so CSV needs no quoting.
pub fn render_congruences(records: &[CongruenceRecord], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("record serializes"));
                out.push('\n');
            }
        }
        OutputFormat::Csv => {
            out.push_str(CONGRUENCE_CSV_HEADER);
            out.push('\n');
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.family, r.p, r.k, r.lhs, r.rhs, r.v_diff, r.pass
                ));
            }
        }
    }
    out
}

/// Render identity records; rationals print as numerator/denominator in
/// lowest terms, which contains no comma.
pub fn render_identities(records: &[IdentityRecord], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("record serializes"));
                out.push('\n');
            }
        }
        OutputFormat::Csv => {
            out.push_str(IDENTITY_CSV_HEADER);
            out.push('\n');
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.name, r.n, r.lhs, r.rhs, r.pass
                ));
            }
        }
    }
    out
}

/// Resolve the output path: relative paths land under SUPERCONG_OUT_DIR
/// when that is set.
pub fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match env::var_os("SUPERCONG_OUT_DIR") {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path.to_path_buf(),
    }
}

/// Write the rendered records to the file, or to stdout when no path was
/// given.
pub fn write_output(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(resolve_out_path(path), text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
