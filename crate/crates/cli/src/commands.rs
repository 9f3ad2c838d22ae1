use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{json, Value};
use votepower::legislature::{classify_bicameral, compare_members, crossover_sizes, majority_quota};
use votepower::semivalues::{distinguishing_indices, weak_desirability};
use votepower::us_model::{ranking, sign_runs, supermajority_scan, vr_comparison};
use votepower::{Dominance, MulticamSpec, Ratio, Relation, Side, UsSpec, WeightingVector};

use crate::error::{invalid, CliError};
use crate::model::Model;
use crate::report::{RankLine, Report};
use crate::spec_file::SpecFile;

/// Which semivalue to evaluate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSelector {
    Banzhaf,
    ShapleyShubik,
    PointMass(u64),
    File(PathBuf),
}

impl FromStr for IndexSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "banzhaf" => Ok(IndexSelector::Banzhaf),
            "shapley" | "shapley-shubik" => Ok(IndexSelector::ShapleyShubik),
            _ => {
                if let Some(k) = s.strip_prefix("pointmass:") {
                    k.parse()
                        .map(IndexSelector::PointMass)
                        .map_err(|_| format!("bad coalition size in {s:?}"))
                } else if let Some(path) = s.strip_prefix("file:") {
                    Ok(IndexSelector::File(PathBuf::from(path)))
                } else {
                    Err(format!(
                        "unknown index {s:?}; expected banzhaf, shapley, pointmass:<k> or file:<path>"
                    ))
                }
            }
        }
    }
}

impl IndexSelector {
    pub fn label(&self) -> String {
        match self {
            IndexSelector::Banzhaf => "banzhaf".into(),
            IndexSelector::ShapleyShubik => "shapley-shubik".into(),
            IndexSelector::PointMass(k) => format!("pointmass:{k}"),
            IndexSelector::File(p) => format!("file:{}", p.display()),
        }
    }

    pub fn weights(&self, n: usize) -> Result<WeightingVector, CliError> {
        let w = match self {
            IndexSelector::Banzhaf => WeightingVector::banzhaf(n),
            IndexSelector::ShapleyShubik => WeightingVector::shapley_shubik(n),
            IndexSelector::PointMass(k) => WeightingVector::point_mass(n, *k),
            IndexSelector::File(path) => return read_weights(path, n),
        };
        w.map_err(|e| invalid(format!("index {}: {e}", self.label())))
    }
}

/// Newline-separated exact rationals `p/q`; blank lines are skipped.
pub fn read_weights(path: &Path, n: usize) -> Result<WeightingVector, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let mut weights = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let w: Ratio = line.parse().map_err(|_| {
            invalid(format!("{}:{}: {line:?} is not an exact rational", path.display(), i + 1))
        })?;
        weights.push(w);
    }
    if weights.len() != n {
        return Err(invalid(format!(
            "{}: expected {n} weights, found {}",
            path.display(),
            weights.len()
        )));
    }
    WeightingVector::new(weights).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

pub struct Outcome {
    pub report: Report,
    pub exit_code: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, exit_code: 0 }
    }
}

fn load(path: &Path) -> Result<(Model, Value), CliError> {
    let file = SpecFile::read(path)?;
    let model = file.to_model()?;
    Ok((model, serde_json::to_value(&file).expect("spec serializes")))
}

fn echo(meta: bool, input: Value) -> Option<Value> {
    meta.then_some(input)
}

fn add_analysis(report: &mut Report, model: &Model, index: &IndexSelector) -> Result<(), CliError> {
    let n = model.players() as usize;
    let w = index.weights(n)?;
    let mut values = Vec::new();
    for class in model.classes() {
        let v = model.critical_vector(&class)?;
        values.push((class.clone(), w.evaluate(&v).map_err(|e| invalid(e.to_string()))?));
        report.vectors.push((class, v));
    }
    report.ranking = match model {
        Model::Us { spec, .. } => ranking(spec, &w)
            .map_err(|e| invalid(e.to_string()))?
            .into_iter()
            .map(|e| RankLine {
                class: e.class.as_str().to_string(),
                value: e.value,
                tied_with_previous: e.tied_with_previous,
            })
            .collect(),
        Model::Chambers(_) => {
            let mut sorted = values.clone();
            sorted.sort_by(|a, b| b.1.cmp(&a.1));
            let mut lines: Vec<RankLine> = Vec::new();
            for (class, value) in sorted {
                let tied_with_previous = lines.last().is_some_and(|l| l.value == value);
                lines.push(RankLine {
                    class,
                    value,
                    tied_with_previous,
                });
            }
            lines
        }
    };
    report.index = Some((index.label(), values));
    Ok(())
}

pub fn analyze(path: &Path, index: &IndexSelector, meta: bool) -> Result<Outcome, CliError> {
    let (model, input) = load(path)?;
    let mut report = Report::new("analyze", echo(meta, input));
    add_analysis(&mut report, &model, index)?;
    Ok(report.into())
}

/// `a ≻ b`-style statement with the stronger side first.
fn statement(a: &str, b: &str, rel: Relation) -> String {
    match rel {
        Relation::StrictlyAbove | Relation::WeaklyAbove | Relation::Equal => {
            format!("{a} {} {b}", rel.symbol())
        }
        Relation::StrictlyBelow | Relation::WeaklyBelow => {
            format!("{b} {} {a}", rel.reversed().symbol())
        }
        Relation::Incomparable { .. } => format!("{a} and {b} are incomparable"),
    }
}

pub fn compare(path: &Path, a: &str, b: &str, meta: bool) -> Result<Outcome, CliError> {
    let (model, input) = load(path)?;
    let (a, b) = (model.resolve(a)?, model.resolve(b)?);
    if a == b {
        return Err(invalid(format!("cannot compare class {a:?} with itself")));
    }
    let (ca, cb) = (model.critical_vector(&a)?, model.critical_vector(&b)?);
    let mut report = Report::new("compare", echo(meta, input));
    let rel = weak_desirability(&ca, &cb);
    report.verdict("relation", rel.name());
    report.verdict("statement", statement(&a, &b, rel));
    if let Relation::Incomparable { above_at, below_at } = rel {
        report.verdict("witness_above", above_at);
        report.verdict("witness_below", below_at);
    }
    let n = model.players() as usize;
    if let Some((first, second)) =
        distinguishing_indices(&ca, &cb, n).map_err(|e| invalid(e.to_string()))?
    {
        for (key, w) in [("index_favoring_first", first), ("index_favoring_second", second)] {
            let k = w
                .weights()
                .iter()
                .position(|x| x != &Ratio::from_integer(0.into()))
                .map_or(0, |i| i as u64 + 1);
            let va = w.evaluate(&ca).map_err(|e| invalid(e.to_string()))?;
            let vb = w.evaluate(&cb).map_err(|e| invalid(e.to_string()))?;
            report.verdict(
                key,
                json!([format!("pointmass:{k}"), format!("{a}={va}"), format!("{b}={vb}")]),
            );
        }
    }
    if let Model::Chambers(spec) = &model {
        let v = compare_members(spec, &a, &b).map_err(|e| invalid(e.to_string()))?;
        report.verdict("dominance", format!("{:?}", v.relation));
        if let Some(side) = v.leader {
            report.verdict("leader", if side == Side::First { a.clone() } else { b.clone() });
        }
        if v.relation == Dominance::Crossover {
            report.verdict("crossover_sizes", v.crossover_sizes.iter().copied().collect::<Vec<_>>());
        }
    }
    report.vectors.push((a, ca));
    report.vectors.push((b, cb));
    Ok(report.into())
}

pub fn oracle(path: &Path, meta: bool) -> Result<Outcome, CliError> {
    let (model, input) = load(path)?;
    let game = model.game()?;
    let by_class = game
        .class_critical_vectors()
        .map_err(|e| invalid(e.to_string()))?;
    let mut report = Report::new("oracle", echo(meta, input));
    report.verdict("players", game.n());
    report.verdict("coalitions", 1u64 << game.n());
    let mut mismatch = None;
    for class in model.classes() {
        let closed = model.critical_vector(&class)?;
        let (enumerated, uniform) = by_class
            .get(&class)
            .cloned()
            .unwrap_or_default();
        let status = if !uniform {
            mismatch.get_or_insert_with(|| json!({"class": class, "reason": "players of the class differ"}));
            "mismatch"
        } else if closed != enumerated {
            let k = (0..=model.players())
                .find(|&k| closed.get(k) != enumerated.get(k))
                .expect("vectors differ somewhere");
            mismatch.get_or_insert_with(|| {
                json!({
                    "class": class,
                    "k": k,
                    "closed_form": closed.get(k).to_string(),
                    "enumeration": enumerated.get(k).to_string(),
                })
            });
            "mismatch"
        } else {
            "match"
        };
        report.verdict(format!("class:{class}"), status);
    }
    let exit_code = match mismatch {
        None => {
            report.verdict("result", "match");
            0
        }
        Some(first) => {
            report.verdict("result", "mismatch");
            report.verdict("first_mismatch", first.to_string());
            1
        }
    };
    Ok(Outcome { report, exit_code })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct QuotaFlags {
    pub senate_quota: Option<u64>,
    pub house_quota: Option<u64>,
    pub senate_override: Option<u64>,
    pub house_override: Option<u64>,
}

impl QuotaFlags {
    /// The default system with these quotas applied. Raised signature quotas
    /// lift the override quotas with them unless those are given too.
    pub fn spec(&self) -> Result<UsSpec, CliError> {
        let base = UsSpec::default();
        let mut spec = base.with_sign_quotas(
            self.senate_quota.unwrap_or(base.senate_quota),
            self.house_quota.unwrap_or(base.house_quota),
        );
        if let Some(o) = self.senate_override {
            spec.senate_override = o;
        }
        if let Some(o) = self.house_override {
            spec.house_override = o;
        }
        spec.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(spec)
    }
}

fn us_echo(spec: &UsSpec) -> Value {
    json!({
        "senate_size": spec.senate_size,
        "house_size": spec.house_size,
        "senate_quota": spec.senate_quota,
        "house_quota": spec.house_quota,
        "senate_override": spec.senate_override,
        "house_override": spec.house_override,
        "president": spec.has_president,
        "vice_president": spec.has_vp,
    })
}

fn sign_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Greater => "vice_president",
        Ordering::Less => "representative",
        Ordering::Equal => "equal",
    }
}

pub fn us(flags: QuotaFlags, index: &IndexSelector, meta: bool) -> Result<Outcome, CliError> {
    let spec = flags.spec()?;
    let model = Model::us(spec);
    let mut report = Report::new("us", echo(meta, us_echo(&spec)));
    add_analysis(&mut report, &model, index)?;

    let classes = model.classes();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            let rel = weak_desirability(&model.critical_vector(a)?, &model.critical_vector(b)?);
            report.verdict(format!("relation:{a}:{b}"), statement(a, b, rel));
        }
    }
    if spec.has_vp {
        let table = vr_comparison(&spec).map_err(|e| invalid(e.to_string()))?;
        let runs: Vec<String> = sign_runs(&table)
            .into_iter()
            .map(|(lo, hi, o)| format!("{lo}..{hi}:{}", sign_word(o)))
            .collect();
        report.verdict("vice_president_vs_representative", runs);
    }
    let mut quotas = vec![majority_quota(spec.senate_size), spec.senate_quota, spec.senate_size];
    quotas.sort_unstable();
    quotas.dedup();
    for row in supermajority_scan(&spec, &quotas).map_err(|e| invalid(e.to_string()))? {
        let mut entry = vec![format!("senator_vs_representative={}", row.senator_vs_rep.name())];
        if spec.has_president {
            entry.push(format!("president_vs_senator={}", row.president_vs_senator.name()));
        }
        report.verdict(format!("senate_quota:{}", row.senate_quota), entry);
    }
    Ok(report.into())
}

pub fn crossover(
    small: u64,
    large: u64,
    small_quota: Option<u64>,
    large_quota: Option<u64>,
    meta: bool,
) -> Result<Outcome, CliError> {
    let qs = small_quota.unwrap_or_else(|| majority_quota(small));
    let qr = large_quota.unwrap_or_else(|| majority_quota(large));
    let spec = MulticamSpec::bicameral(small, qs, large, qr).map_err(|e| invalid(e.to_string()))?;
    let input = json!({"ms": small, "qs": qs, "mr": large, "qr": qr});
    let mut report = Report::new("crossover", echo(meta, input));
    let sizes = crossover_sizes(small, qs, large, qr).map_err(|e| invalid(e.to_string()))?;
    report.verdict("crossover_sizes", sizes.into_iter().collect::<Vec<_>>());
    let v = compare_members(&spec, "senate", "house").map_err(|e| invalid(e.to_string()))?;
    report.verdict("dominance", format!("{:?}", v.relation));
    if let Some(side) = v.leader {
        report.verdict("leader", if side == Side::First { "senate" } else { "house" });
    }
    if qs == majority_quota(small) && qr == majority_quota(large) && small < large {
        if let Ok(case) = classify_bicameral(small, large) {
            report.verdict("case", format!("{case:?}"));
        }
    }
    Ok(report.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_selectors() {
        assert_eq!("banzhaf".parse(), Ok(IndexSelector::Banzhaf));
        assert_eq!("shapley".parse(), Ok(IndexSelector::ShapleyShubik));
        assert_eq!("pointmass:370".parse(), Ok(IndexSelector::PointMass(370)));
        assert_eq!(
            "file:w.txt".parse(),
            Ok(IndexSelector::File(PathBuf::from("w.txt")))
        );
        assert!("pointmass:x".parse::<IndexSelector>().is_err());
        assert!("johnston".parse::<IndexSelector>().is_err());
    }

    #[test]
    fn quota_flags_raise_overrides() {
        let spec = QuotaFlags {
            senate_quota: Some(80),
            ..Default::default()
        }
        .spec()
        .unwrap();
        assert_eq!((spec.senate_quota, spec.senate_override), (80, 80));
        assert!(QuotaFlags {
            senate_override: Some(40),
            ..Default::default()
        }
        .spec()
        .is_err());
    }

    #[test]
    fn statements_put_the_stronger_side_first() {
        assert_eq!(statement("a", "b", Relation::StrictlyBelow), "b ≻ a");
        assert_eq!(statement("a", "b", Relation::WeaklyAbove), "a ⪰ b");
    }
}
