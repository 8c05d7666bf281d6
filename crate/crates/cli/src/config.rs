//! Flat `key = value` sweep configuration files.
//!
//! ```text
//! # relocalization scan at two scales
//! scan = relocalization
//! alpha = 4, 5
//! delta_min = 0
//! delta_max = 0.005
//! steps = 11
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use qrc_core::catastrophe::DEFAULT_BRACKET;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    Relocalization,
    Alc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendChoice {
    Harmonic,
    Numerical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub name: String,
    pub scan: ScanKind,
    pub alphas: Vec<f64>,
    pub delta_min: f64,
    pub delta_max: f64,
    pub steps: usize,
    pub lambda: f64,
    pub step: f64,
    /// Chosen per α from the potential when absent.
    pub half_width: Option<f64>,
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    pub backend: BackendChoice,
    /// Parsed key/value pairs exactly as given, for the manifest.
    pub raw: BTreeMap<String, String>,
}

/// Every problem found in a file, each with its line number where one applies.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics(pub Vec<String>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("\n"))
    }
}

const KEYS: [&str; 12] = [
    "name", "scan", "alpha", "delta_min", "delta_max", "steps", "lambda", "step", "half_width", "m", "n",
    "backend",
];

struct Entry {
    line: usize,
    value: String,
}

fn parse_one<T: FromStr>(key: &str, e: &Entry, errs: &mut Vec<String>) -> Option<T> {
    match e.value.parse() {
        Ok(v) => Some(v),
        Err(_) => {
            errs.push(format!("line {}: invalid value '{}' for {key}", e.line, e.value));
            None
        }
    }
}

fn parse_list<T: FromStr>(key: &str, e: &Entry, errs: &mut Vec<String>) -> Option<Vec<T>> {
    let mut out = Vec::new();
    for item in e.value.split(',').map(str::trim) {
        match item.parse() {
            Ok(v) => out.push(v),
            Err(_) => {
                errs.push(format!("line {}: invalid list item '{item}' for {key}", e.line));
                return None;
            }
        }
    }
    Some(out)
}

impl FromStr for SweepConfig {
    type Err = Diagnostics;

    fn from_str(text: &str) -> Result<Self, Diagnostics> {
        let mut errs = Vec::new();
        let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split_once('#').map_or(raw, |(c, _)| c).trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                errs.push(format!("line {line}: expected 'key = value', found '{content}'"));
                continue;
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                errs.push(format!("line {line}: unknown key '{key}' (known: {})", KEYS.join(", ")));
            } else if value.is_empty() {
                errs.push(format!("line {line}: empty value for {key}"));
            } else if let Some(prev) = entries.get(key) {
                errs.push(format!("line {line}: duplicate key '{key}' (first set on line {})", prev.line));
            } else {
                entries.insert(key.to_string(), Entry { line, value: value.to_string() });
            }
        }

        let get = |k: &str| entries.get(k);
        let name = get("name").map_or_else(|| "scan".to_string(), |e| e.value.clone());
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            let line = get("name").map_or(0, |e| e.line);
            errs.push(format!("line {line}: name may only contain letters, digits, '_' and '-'"));
        }
        let scan = match get("scan").map(|e| (e.line, e.value.as_str())) {
            None | Some((_, "relocalization")) => ScanKind::Relocalization,
            Some((_, "alc")) => ScanKind::Alc,
            Some((line, other)) => {
                errs.push(format!("line {line}: scan must be 'relocalization' or 'alc', found '{other}'"));
                ScanKind::Relocalization
            }
        };
        let backend = match get("backend").map(|e| (e.line, e.value.as_str())) {
            None | Some((_, "harmonic")) => BackendChoice::Harmonic,
            Some((_, "numerical")) => BackendChoice::Numerical,
            Some((line, other)) => {
                errs.push(format!("line {line}: backend must be 'harmonic' or 'numerical', found '{other}'"));
                BackendChoice::Harmonic
            }
        };

        let alphas = match get("alpha") {
            Some(e) => parse_list::<f64>("alpha", e, &mut errs).unwrap_or_default(),
            None => {
                errs.push("missing required key 'alpha'".into());
                Vec::new()
            }
        };
        if let Some(e) = get("alpha") {
            if alphas.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
                errs.push(format!("line {}: alpha values must be positive", e.line));
            }
        }
        let float = |k: &str, default: f64, errs: &mut Vec<String>| {
            get(k).map_or(Some(default), |e| parse_one::<f64>(k, e, errs)).unwrap_or(default)
        };
        let (lo, hi) = match scan {
            ScanKind::Relocalization => (0.0, 0.005),
            ScanKind::Alc => DEFAULT_BRACKET,
        };
        let delta_min = float("delta_min", lo, &mut errs);
        let delta_max = float("delta_max", hi, &mut errs);
        let lambda = float("lambda", 1.0, &mut errs);
        let step = float("step", 0.005, &mut errs);
        let half_width = get("half_width").and_then(|e| parse_one::<f64>("half_width", e, &mut errs));
        let steps = get("steps").map_or(Some(11), |e| parse_one::<usize>("steps", e, &mut errs)).unwrap_or(11);
        let m = get("m").map_or(Some(vec![0]), |e| parse_list("m", e, &mut errs)).unwrap_or_default();
        let n = get("n").map_or(Some(vec![0]), |e| parse_list("n", e, &mut errs)).unwrap_or_default();

        let line_of = |k: &str| get(k).map_or_else(|| "default".to_string(), |e| format!("line {}", e.line));
        if !(delta_min < delta_max) {
            errs.push(format!("{}: delta_min must be below delta_max", line_of("delta_max")));
        }
        if scan == ScanKind::Relocalization {
            if steps < 3 {
                errs.push(format!("{}: steps must be at least 3", line_of("steps")));
            }
        }
        for (k, v) in [("lambda", lambda), ("step", step), ("half_width", half_width.unwrap_or(1.0))] {
            if !(v > 0.0) || !v.is_finite() {
                errs.push(format!("{}: {k} must be positive", line_of(k)));
            }
        }

        if !errs.is_empty() {
            // Line-numbered problems first, in file order.
            let line = |e: &String| {
                e.strip_prefix("line ")
                    .and_then(|r| r.split(':').next())
                    .and_then(|n| n.parse::<usize>().ok())
                    .unwrap_or(usize::MAX)
            };
            errs.sort_by_key(line);
            return Err(Diagnostics(errs));
        }
        Ok(SweepConfig {
            name,
            scan,
            alphas,
            delta_min,
            delta_max,
            steps,
            lambda,
            step,
            half_width,
            m,
            n,
            backend,
            raw: entries.into_iter().map(|(k, e)| (k, e.value)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_defaults_and_comments() {
        let cfg: SweepConfig = "# comment\nalpha = 4, 5  # two scales\n\nsteps=11\n".parse().unwrap();
        assert_eq!(cfg.alphas, vec![4.0, 5.0]);
        assert_eq!(cfg.steps, 11);
        assert_eq!(cfg.scan, ScanKind::Relocalization);
        assert_eq!(cfg.name, "scan");
        assert_eq!(cfg.raw["alpha"], "4, 5");
    }

    #[test]
    fn reports_every_bad_line() {
        let err = "alpha = 4\nsteps = eleven\nbogus = 1\njust text\nalpha = 5\n"
            .parse::<SweepConfig>()
            .unwrap_err();
        let text = err.to_string();
        assert!(text.contains("line 2: invalid value 'eleven' for steps"), "{text}");
        assert!(text.contains("line 3: unknown key 'bogus'"));
        assert!(text.contains("line 4: expected 'key = value'"));
        assert!(text.contains("line 5: duplicate key 'alpha'"));
    }

    #[test]
    fn requires_alpha_and_valid_ranges() {
        let err = "delta_min = 0.01\ndelta_max = 0.0\n".parse::<SweepConfig>().unwrap_err();
        assert!(err.0.iter().any(|e| e.contains("missing required key 'alpha'")));
        assert!(err.0.iter().any(|e| e.contains("line 2: delta_min must be below delta_max")));
        assert!("alpha = -1".parse::<SweepConfig>().is_err());
    }
}
