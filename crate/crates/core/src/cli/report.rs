//! Report documents and their plain-text rendering.
//!
//! Every rational in a report is a string `p/q` (or `p`), so a report read
//! back with [`serde_json`] compares equal to the one written. The `timings`
//! field is the only part that varies between runs.

use std::fmt::Write as _;

use num::{integer::Integer, BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Check(CheckReport),
    Order(OrderReport),
    Free(FreeReport),
    Induce(InduceReport),
    Enum(EnumReport),
}

impl Report {
    pub fn timings_mut(&mut self) -> &mut Timings {
        match self {
            Report::Check(r) => &mut r.timings,
            Report::Order(r) => &mut r.timings,
            Report::Free(r) => &mut r.timings,
            Report::Induce(r) => &mut r.timings,
            Report::Enum(r) => &mut r.timings,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: Option<String>,
    pub ring: String,
    pub dim: usize,
    pub field_basis: Vec<String>,
    pub hopf_labels: Vec<String>,
    pub field_axioms: bool,
    pub discriminant: String,
    pub rank_ok: bool,
    pub j_bijective: bool,
    pub action_matrix: Vec<Vec<String>>,
    pub timings: Timings,
}

/// An element of `H` in `w`-coordinates with a readable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub coordinates: Vec<String>,
    pub expression: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderChecks {
    pub integral_action: bool,
    pub contains_one: bool,
    pub ring_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub name: Option<String>,
    pub ring: String,
    pub content: String,
    pub hnf: Vec<Vec<String>>,
    pub basis: Vec<Element>,
    /// `action_table[i][j]`: coordinates of `e_i · γ_j`.
    pub action_table: Vec<Vec<Vec<String>>>,
    pub checks: OrderChecks,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub beta: Vec<String>,
    pub expression: String,
    pub d_beta: Vec<Vec<String>>,
    pub det: String,
    pub module_index: String,
    pub free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeReport {
    pub name: Option<String>,
    pub ring: String,
    pub search_bound: Option<i64>,
    pub found: bool,
    pub candidate: Option<Candidate>,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Claim<T> {
    Checked(T),
    Refused { reason: String },
}

impl<T> Claim<T> {
    pub fn checked(&self) -> Option<&T> {
        match self {
            Claim::Checked(t) => Some(t),
            Claim::Refused { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContentCheck {
    pub induced: String,
    pub left: String,
    pub right: String,
    pub equal_up_to_unit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorOrderResult {
    pub equal: bool,
    pub induced_basis: Vec<Element>,
    pub product_basis: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorResult {
    pub gamma: Vec<String>,
    pub delta: Vec<String>,
    pub product_beta: Vec<String>,
    pub expression: String,
    pub det: String,
    pub free: bool,
    pub kronecker_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChangeResult {
    pub lattice_eq: bool,
    pub basis: Vec<Element>,
    pub gamma: Option<Vec<String>>,
    pub gamma_free: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InduceReport {
    pub left: Option<String>,
    pub right: Option<String>,
    pub ring: String,
    pub degrees: [usize; 2],
    pub permutation: String,
    pub field_basis: Vec<String>,
    pub hopf_labels: Vec<String>,
    /// `induced_table[i][j]`: coordinates of `(w_i η)·γ_j` in the product basis.
    pub induced_table: Vec<Vec<Vec<String>>>,
    pub kronecker: bool,
    pub rank_ok: bool,
    pub j_bijective: bool,
    pub discriminants: [String; 2],
    pub disjoint: bool,
    pub content: ContentCheck,
    pub hnf_factor_identity: bool,
    pub tensor_order: Claim<TensorOrderResult>,
    pub generator: Option<Claim<GeneratorResult>>,
    pub base_change: Claim<BaseChangeResult>,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEntry {
    #[serde(rename = "J")]
    pub j: Vec<String>,
    #[serde(rename = "Gprime")]
    pub g_prime: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedFlag {
    pub decomposition: usize,
    pub induced: bool,
    pub n1_type: Option<String>,
    pub n2_type: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupEntry {
    pub type_name: String,
    pub elements: Vec<String>,
    /// Elements written as products of `G`-names via the orbit of the identity.
    pub labels: Option<Vec<String>>,
    pub induced: Option<Vec<InducedFlag>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumReport {
    pub name: Option<String>,
    pub degree: usize,
    pub degree_cap: usize,
    pub normalizer: Vec<String>,
    pub decompositions: Vec<DecompositionEntry>,
    pub count: usize,
    pub subgroups: Vec<SubgroupEntry>,
    pub timings: Timings,
}

pub fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_strings()
}

/// Writes `Σ c_i label_i` over a common denominator, e.g. `(w1+w3)/3`.
pub fn combination(coords: &[Rational], labels: &[String]) -> String {
    let den = coords.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut body = String::new();
    let mut terms = 0;
    for (c, label) in coords.iter().zip(labels) {
        let k = (c * Rational::from_integer(den.clone())).to_integer();
        if k.is_zero() {
            continue;
        }
        terms += 1;
        let sign = if k.is_negative() { "-" } else if body.is_empty() { "" } else { "+" };
        let mag = k.abs();
        body.push_str(sign);
        if !mag.is_one() {
            body.push_str(&mag.to_string());
            if label != "1" {
                body.push('*');
            }
        }
        if !mag.is_one() && label == "1" {
            continue;
        }
        body.push_str(label);
    }
    if body.is_empty() {
        return "0".into();
    }
    if den.is_one() {
        body
    } else if terms > 1 {
        format!("({body})/{den}")
    } else {
        format!("{body}/{den}")
    }
}

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "  [ {} ]", cells.join("  "));
    }
    out
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn elements(out: &mut String, title: &str, es: &[Element]) {
    let _ = writeln!(out, "{title}:");
    for (i, e) in es.iter().enumerate() {
        let _ = writeln!(out, "  e{} = {}", i + 1, e.expression);
    }
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Check(r) => {
            let _ = writeln!(out, "check {} over {}", r.name.as_deref().unwrap_or("-"), r.ring);
            let _ = writeln!(out, "dimension        {}", r.dim);
            let _ = writeln!(out, "field axioms     {}", flag(r.field_axioms));
            let _ = writeln!(out, "discriminant     {}", r.discriminant);
            let _ = writeln!(out, "rank ok          {}", flag(r.rank_ok));
            let _ = writeln!(out, "j bijective      {}", flag(r.j_bijective));
            let _ = writeln!(out, "action matrix:");
            out.push_str(&grid(&r.action_matrix));
        }
        Report::Order(r) => {
            let _ = writeln!(out, "associated order of {} over {}", r.name.as_deref().unwrap_or("-"), r.ring);
            let _ = writeln!(out, "content          {}", r.content);
            let _ = writeln!(out, "hermite form:");
            out.push_str(&grid(&r.hnf));
            elements(&mut out, "basis", &r.basis);
            let _ = writeln!(out, "action of the basis (rows e_i, columns gamma_j):");
            for (i, row) in r.action_table.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| format!("({})", v.join(","))).collect();
                let _ = writeln!(out, "  e{}: {}", i + 1, cells.join("  "));
            }
            let c = &r.checks;
            let _ = writeln!(
                out,
                "integral action {}, contains 1 {}, closed {}",
                flag(c.integral_action),
                flag(c.contains_one),
                flag(c.ring_closed)
            );
        }
        Report::Free(r) => {
            let _ = writeln!(out, "freeness of {} over {}", r.name.as_deref().unwrap_or("-"), r.ring);
            if let Some(b) = r.search_bound {
                let _ = writeln!(out, "search bound     {b}");
            }
            match &r.candidate {
                None => {
                    let _ = writeln!(out, "no free generator found");
                }
                Some(c) => {
                    let _ = writeln!(out, "beta             {}", c.expression);
                    let _ = writeln!(out, "D_beta:");
                    out.push_str(&grid(&c.d_beta));
                    let _ = writeln!(out, "det              {}", c.det);
                    let _ = writeln!(out, "module index     {}", c.module_index);
                    let _ = writeln!(out, "free             {}", flag(c.free));
                }
            }
        }
        Report::Induce(r) => {
            let _ = writeln!(
                out,
                "induced structure {} x {} over {}",
                r.left.as_deref().unwrap_or("-"),
                r.right.as_deref().unwrap_or("-"),
                r.ring
            );
            let _ = writeln!(out, "degrees          r = {}, u = {}", r.degrees[0], r.degrees[1]);
            let _ = writeln!(out, "permutation P    {}", r.permutation);
            let _ = writeln!(out, "P M = M1 (x) M2  {}", flag(r.kronecker));
            let _ = writeln!(out, "hopf galois      rank {}, j bijective {}", flag(r.rank_ok), flag(r.j_bijective));
            let _ = writeln!(out, "discriminants    {}, {}", r.discriminants[0], r.discriminants[1]);
            let _ = writeln!(out, "disjoint         {}", flag(r.disjoint));
            let _ = writeln!(
                out,
                "content          {} vs {} * {} ({})",
                r.content.induced,
                r.content.left,
                r.content.right,
                if r.content.equal_up_to_unit { "equal up to a unit" } else { "different" }
            );
            let _ = writeln!(out, "D vs D1 (x) D2   {}", if r.hnf_factor_identity { "same lattice" } else { "different" });
            match &r.tensor_order {
                Claim::Checked(t) => {
                    let _ = writeln!(out, "tensor order     {}", flag(t.equal));
                    elements(&mut out, "induced order", &t.induced_basis);
                }
                Claim::Refused { reason } => {
                    let _ = writeln!(out, "tensor order     refused: {reason}");
                }
            }
            match &r.generator {
                Some(Claim::Checked(g)) => {
                    let _ = writeln!(out, "generator        {} det {} free {}", g.expression, g.det, flag(g.free));
                    let _ = writeln!(out, "D = Dg (x) Dd    {}", flag(g.kronecker_consistent));
                }
                Some(Claim::Refused { reason }) => {
                    let _ = writeln!(out, "generator        refused: {reason}");
                }
                None => {}
            }
            match &r.base_change {
                Claim::Checked(b) => {
                    let gf = b.gamma_free.map(flag).unwrap_or("n/a");
                    let _ = writeln!(out, "base change      lattice {}, gamma free {}", flag(b.lattice_eq), gf);
                }
                Claim::Refused { reason } => {
                    let _ = writeln!(out, "base change      refused: {reason}");
                }
            }
        }
        Report::Enum(r) => {
            let _ = writeln!(out, "regular subgroups of Sym({}) for {}", r.degree, r.name.as_deref().unwrap_or("-"));
            let _ = writeln!(out, "found            {}", r.count);
            for (i, d) in r.decompositions.iter().enumerate() {
                let _ = writeln!(out, "decomposition {i}  J = {{{}}}, G' = {{{}}}", d.j.join(","), d.g_prime.join(","));
            }
            for (i, s) in r.subgroups.iter().enumerate() {
                let induced = match &s.induced {
                    None => String::new(),
                    Some(flags) => {
                        let under: Vec<String> =
                            flags.iter().filter(|f| f.induced).map(|f| f.decomposition.to_string()).collect();
                        if under.is_empty() {
                            "  not induced".into()
                        } else {
                            format!("  induced under {}", under.join(","))
                        }
                    }
                };
                let _ = writeln!(out, "  N{} {:<8} {}{}", i + 1, s.type_name, s.elements.join(" "), induced);
            }
        }
    }
    out
}
