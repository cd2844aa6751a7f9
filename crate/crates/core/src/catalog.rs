//! Machine-readable Tables 1 and 2, claim templates and the desk grid.
//!
//! The data lives in `data/catalog.json`, compiled into the binary and
//! pinned by its SHA-256 digest.

use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::orders::{self, Params, RowOrders};

pub const CATALOG_JSON: &str = include_str!("../data/catalog.json");
pub const CATALOG_SHA256: &str = "0260376d1420c6b7e8db1d347cb94897c65d3fa78ac42b2ee948c87d72c39788";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Row {
    pub row: u32,
    pub z: String,
    pub x: Vec<String>,
    pub y: String,
    pub remarks: Vec<String>,
    pub lemmas: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2Row {
    pub row: u32,
    pub l: String,
    pub h_inf: Vec<String>,
    pub k_inf: String,
    pub conditions: Vec<String>,
    pub table1_rows: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimTemplate {
    pub id: String,
    pub table1_row: u32,
    pub g: String,
    pub h: String,
    pub k: String,
    pub meet: String,
    pub params: Vec<String>,
    pub conditions: Vec<String>,
    pub lemmas: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Desk,
    Extended,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeskEntry {
    pub claim: String,
    pub params: Params,
    pub tier: Tier,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NegativeControl {
    pub id: String,
    pub g: String,
    pub h: String,
    pub k: String,
    pub params: Params,
    pub lemmas: Vec<String>,
    pub expect: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub schema: String,
    pub conventions: String,
    pub table1: Vec<Table1Row>,
    pub table2: Vec<Table2Row>,
    pub claims: Vec<ClaimTemplate>,
    pub desk_grid: Vec<DeskEntry>,
    pub negative_controls: Vec<NegativeControl>,
}

/// A template bound to concrete parameters.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationClaim {
    pub template: ClaimTemplate,
    pub params: Params,
    /// `gcd(m, 3)` for Rows 6 and 7.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<u64>,
    #[serde(serialize_with = "orders::ser_row_orders")]
    pub orders: RowOrders,
}

pub fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("embedded catalog parses"))
}

pub fn catalog_digest() -> String {
    let d = Sha256::digest(CATALOG_JSON.as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn template(id: &str) -> Result<&'static ClaimTemplate> {
    catalog().claims.iter().find(|c| c.id == id).ok_or_else(|| Error::Catalog(format!("no claim template '{id}'")))
}

/// Evaluates one named side condition.
pub fn eval_condition(cond: &str, p: &Params) -> Result<bool> {
    let get = |v: Option<u64>, name: &str| v.ok_or_else(|| Error::Params(format!("parameter {name} missing")));
    let q = || get(p.q, "q");
    let n = || get(p.n, "n");
    let a = || get(p.a, "a");
    let b = || get(p.b, "b");
    let m = || get(p.m, "m");
    Ok(match cond {
        "n=ab" => n()? == a()? * b()?,
        "n=6b" => n()? == 6 * b()?,
        "a>=2" => a()? >= 2,
        "b>=2" => b()? >= 2,
        "a even" => a()? % 2 == 0,
        "n even" => n()? % 2 == 0,
        "n>=4" => n()? >= 4,
        "q even" => q()? % 2 == 0,
        "q=2" => q()? == 2,
        "q=4" => q()? == 4,
        "m>=2" => m()? >= 2,
        "m even" => m()? % 2 == 0,
        _ => return Err(Error::Catalog(format!("unknown condition '{cond}'"))),
    })
}

/// Fills derived parameters (`n` from `a,b`, `b,m`) and checks the claim's
/// side conditions, naming the first violated predicate.
pub fn normalize_params(id: &str, p: &Params) -> Result<Params> {
    let t = template(id)?;
    let mut p = *p;
    for name in &t.params {
        let present = match name.as_str() {
            "a" => p.a.is_some(),
            "b" => p.b.is_some(),
            "q" => p.q.is_some(),
            "n" => p.n.is_some(),
            "m" => p.m.is_some(),
            _ => false,
        };
        if !present {
            return Err(Error::Params(format!("claim {id} needs parameter {name}")));
        }
    }
    if let Some(q) = p.q {
        if crate::gf::prime_power(q).is_none() {
            return Err(Error::Params(format!("{q} is not a prime power")));
        }
    }
    match (p.a, p.b, p.m) {
        (Some(a), Some(b), _) if p.n.is_none() => p.n = Some(a * b),
        (None, Some(b), _) if p.n.is_none() && t.conditions.iter().any(|c| c == "n=6b") => p.n = Some(6 * b),
        (_, _, Some(m)) if p.n.is_none() => p.n = Some(2 * m),
        _ => {}
    }
    for c in &t.conditions {
        if !eval_condition(c, &p)? {
            let label = match c.as_str() {
                "q even" => "q even required".to_string(),
                other => format!("condition '{other}' violated"),
            };
            return Err(Error::Params(format!("claim {id}: {label}")));
        }
    }
    Ok(p)
}

pub fn check_conditions(id: &str, p: &Params) -> Result<()> {
    let np = normalize_params(id, p)?;
    if np != *p && (p.n.is_some() && np.n != p.n) {
        return Err(Error::Params(format!("claim {id}: inconsistent n")));
    }
    Ok(())
}

pub fn instantiate(id: &str, p: &Params) -> Result<FactorizationClaim> {
    let params = normalize_params(id, p)?;
    let divisor = if id.starts_with('6') || id.starts_with('7') { params.m.map(|m| m.gcd(&3)) } else { None };
    Ok(FactorizationClaim { template: template(id)?.clone(), params, divisor, orders: orders::row_orders(id, &params)? })
}

pub fn desk_grid() -> Vec<DeskEntry> {
    catalog()
        .desk_grid
        .iter()
        .map(|e| DeskEntry { params: normalize_params(&e.claim, &e.params).expect("grid entries are legal"), ..e.clone() })
        .collect()
}

/// Lemma labels referenced by the templates.
pub fn referenced_lemmas() -> Vec<String> {
    let mut v: Vec<String> = catalog().claims.iter().flat_map(|c| c.lemmas.iter().cloned()).collect();
    v.sort();
    v.dedup();
    v
}

/// Plain-text listing for the CLI.
pub fn listing() -> String {
    let cat = catalog();
    let mut s = String::new();
    for r in &cat.table1 {
        s.push_str(&format!(
            "Row {:>2}  Z={:<16} X={:<32} Y={:<22} {:<14} [{}]\n",
            r.row,
            r.z,
            r.x.join(", "),
            r.y,
            r.remarks.join("; "),
            r.lemmas.join(", ")
        ));
    }
    s
}
