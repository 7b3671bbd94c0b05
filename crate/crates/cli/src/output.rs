//! Report types and rendering. The JSON shapes here are the stable
//! output contract; text rendering reads off the same structs so the two
//! formats can never drift apart.

use serde::{Deserialize, Serialize};

use patcount::{GfResult, Step};

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct StepReport {
    pub rule: String,
    pub detail: String,
}

impl StepReport {
    pub fn from_step(s: &Step) -> Self {
        Self {
            rule: s.rule.to_string(),
            detail: s.detail.clone(),
        }
    }
}

/// One generating-function answer. `series[n]` is the count at length
/// `n`, written in decimal so arbitrary precision survives JSON.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct GfReport {
    pub avoid: String,
    pub contain: String,
    pub order: usize,
    /// Present only when a closed form reproduced the series exactly.
    pub closed: Option<String>,
    pub series: Vec<String>,
    pub steps: Vec<StepReport>,
}

impl GfReport {
    pub fn from_result(r: &GfResult) -> Self {
        Self {
            avoid: r.set.to_string(),
            contain: r.tau.to_string(),
            order: r.order,
            closed: r.closed.as_ref().map(|c| c.to_string()),
            series: r.series.coeffs().iter().map(|c| c.to_string()).collect(),
            steps: r.steps.iter().map(StepReport::from_step).collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("avoid {} contain {}\n", self.avoid, self.contain);
        match &self.closed {
            Some(c) => out.push_str(&format!("closed form: {c}\n")),
            None => out.push_str("closed form: none attached (series coefficients are exact)\n"),
        }
        out.push_str(&format!("series: [{}]\n", self.series.join(", ")));
        for step in &self.steps {
            if step.rule == "forbidden-pattern-guard" {
                out.push_str(&format!("note: {}\n", step.detail));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct SeqRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    /// Only present when both sources were computed.
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct SeqReport {
    pub avoid: String,
    pub contain: String,
    pub source: String,
    pub rows: Vec<SeqRow>,
}

impl SeqReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "avoid {} contain {} (source: {})\n",
            self.avoid, self.contain, self.source
        );
        let w_n = self.rows.iter().map(|r| r.n.to_string().len()).max().unwrap_or(1);
        let width = |get: fn(&SeqRow) -> &Option<String>, head: usize| {
            self.rows
                .iter()
                .filter_map(|r| get(r).as_ref().map(|v| v.len()))
                .max()
                .unwrap_or(0)
                .max(head)
        };
        let w_f = width(|r| &r.formula, 7);
        let w_o = width(|r| &r.oracle, 6);
        let has_f = self.rows.iter().any(|r| r.formula.is_some());
        let has_o = self.rows.iter().any(|r| r.oracle.is_some());
        let has_m = self.rows.iter().any(|r| r.matches.is_some());
        let mut header = format!("{:>w$}", "n", w = w_n.max(1));
        if has_f {
            header.push_str(&format!("  {:>w$}", "formula", w = w_f));
        }
        if has_o {
            header.push_str(&format!("  {:>w$}", "oracle", w = w_o));
        }
        if has_m {
            header.push_str("  match");
        }
        out.push_str(&header);
        out.push('\n');
        for row in &self.rows {
            let mut line = format!("{:>w$}", row.n, w = w_n.max(1));
            if has_f {
                line.push_str(&format!(
                    "  {:>w$}",
                    row.formula.as_deref().unwrap_or("-"),
                    w = w_f
                ));
            }
            if has_o {
                line.push_str(&format!(
                    "  {:>w$}",
                    row.oracle.as_deref().unwrap_or("-"),
                    w = w_o
                ));
            }
            if has_m {
                line.push_str(&format!(
                    "  {:>5}",
                    match row.matches {
                        Some(true) => "yes",
                        Some(false) => "NO",
                        None => "-",
                    }
                ));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let has_f = self.rows.iter().any(|r| r.formula.is_some());
        let has_o = self.rows.iter().any(|r| r.oracle.is_some());
        let has_m = self.rows.iter().any(|r| r.matches.is_some());
        let mut cols = vec!["n"];
        if has_f {
            cols.push("formula");
        }
        if has_o {
            cols.push("oracle");
        }
        if has_m {
            cols.push("match");
        }
        let mut out = cols.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut fields = vec![row.n.to_string()];
            if has_f {
                fields.push(row.formula.clone().unwrap_or_default());
            }
            if has_o {
                fields.push(row.oracle.clone().unwrap_or_default());
            }
            if has_m {
                fields.push(
                    row.matches
                        .map(|m| m.to_string())
                        .unwrap_or_default(),
                );
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// OEIS-style rows from n = 1; c0 goes into a header comment.
    pub fn render_bfile(&self) -> String {
        let pick = |r: &SeqRow| {
            r.formula
                .clone()
                .or_else(|| r.oracle.clone())
                .expect("bfile rows carry exactly one source")
        };
        let mut out = format!(
            "# avoid {} contain {} mode exactly-once\n",
            self.avoid, self.contain
        );
        for row in &self.rows {
            if row.n == 0 {
                out.push_str(&format!("# c0 = {}\n", pick(row)));
            } else {
                out.push_str(&format!("{} {}\n", row.n, pick(row)));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct ViolationReport {
    pub pattern: String,
    /// 1-based positions of the occurrence inside the query pattern.
    pub positions: Vec<usize>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct ClassifyReport {
    pub avoid: String,
    pub contain: String,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_avoid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_contain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    pub steps: Vec<StepReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<String>,
    pub series: Vec<String>,
}

impl ClassifyReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("avoid {} contain {}\n", self.avoid, self.contain);
        if let Some(v) = &self.violation {
            out.push_str(&format!(
                "not a member: {} occurs at positions {:?}\n",
                v.pattern, v.positions
            ));
            return out;
        }
        if let (Some(f), Some(note)) = (&self.family, &self.family_note) {
            out.push_str(&format!("family: {f} ({note})\n"));
        }
        if let (Some(a), Some(c), Some(m)) =
            (&self.canonical_avoid, &self.canonical_contain, &self.map)
        {
            out.push_str(&format!("canonical: avoid {a} contain {c} via {m}\n"));
        }
        out.push_str("derivation:\n");
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!("  {}. {}: {}\n", i + 1, step.rule, step.detail));
        }
        match &self.closed {
            Some(c) => out.push_str(&format!("closed form: {c}\n")),
            None => out.push_str("closed form: none attached (series coefficients are exact)\n"),
        }
        out.push_str(&format!("series: [{}]\n", self.series.join(", ")));
        out
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct MismatchReport {
    pub avoid: String,
    pub contain: String,
    pub n: usize,
    pub formula: String,
    pub oracle: String,
    pub steps: Vec<StepReport>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct VerifyReport {
    pub sets: Vec<String>,
    pub k_max: usize,
    pub n_max: usize,
    /// Number of (set, pattern) queries compared coefficient by
    /// coefficient against the oracle.
    pub checked: usize,
    pub mismatches: Vec<MismatchReport>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.mismatches.is_empty() {
            0
        } else {
            4
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "verify: {} sets, patterns up to length {}, counts up to length {}\n",
            self.sets.len(),
            self.k_max,
            self.n_max
        );
        for m in &self.mismatches {
            out.push_str(&format!(
                "MISMATCH avoid {} contain {} at n = {}: formula {} vs oracle {}\n",
                m.avoid, m.contain, m.n, m.formula, m.oracle
            ));
            for (i, step) in m.steps.iter().enumerate() {
                out.push_str(&format!("  {}. {}: {}\n", i + 1, step.rule, step.detail));
            }
        }
        out.push_str(&format!(
            "checked {} queries: {} mismatches\n",
            self.checked,
            self.mismatches.len()
        ));
        out
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct WilfMember {
    pub avoid: String,
    pub contain: String,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct WilfGroup {
    pub sequence: Vec<String>,
    /// A closed form verified for at least one member, when any carries one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<String>,
    pub members: Vec<WilfMember>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct WilfReport {
    pub k: usize,
    pub n_max: usize,
    pub groups: Vec<WilfGroup>,
}

impl WilfReport {
    pub fn render_text(&self) -> String {
        let queries: usize = self.groups.iter().map(|g| g.members.len()).sum();
        let mut out = format!(
            "almost-Wilf classes for patterns of length {}, counts up to length {}: {} queries fall into {} classes\n",
            self.k,
            self.n_max,
            queries,
            self.groups.len()
        );
        for (i, group) in self.groups.iter().enumerate() {
            out.push_str(&format!(
                "\nclass {}: sequence [{}]\n",
                i + 1,
                group.sequence.join(", ")
            ));
            if let Some(c) = &group.closed {
                out.push_str(&format!("  closed form: {c}\n"));
            }
            for m in &group.members {
                out.push_str(&format!("  avoid {} contain {}\n", m.avoid, m.contain));
            }
        }
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}
