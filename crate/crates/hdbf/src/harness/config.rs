//! Flat key-value experiment configuration files.
//!
//! One experiment per file, `key = value` lines, `#` comments. Every key is
//! optional and falls back to the default configuration; CLI flags override
//! file values. Recognized keys: `n1`, `n2`, `p`, `scenario` (I or II),
//! `lambda`, `eta`, `case` (A or B), `alpha`, `reps`, `seed`, `tests`
//! (comma-separated subset of fs, cq, plugin), `threads` (count or auto).

use super::{ExperimentConfig, HarnessError, TestKind};
use crate::simgen::{AltCase, Scenario};

/// Parse a configuration document into an experiment config, starting from
/// defaults. Unknown keys and malformed values are configuration errors.
pub fn parse_config_str(text: &str) -> Result<ExperimentConfig, HarnessError> {
    let mut cfg = ExperimentConfig::default();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            HarnessError::Config(format!("line {}: expected 'key = value', got '{raw}'", line_no + 1))
        })?;
        apply_key(&mut cfg, key.trim(), value.trim())
            .map_err(|msg| HarnessError::Config(format!("line {}: {msg}", line_no + 1)))?;
    }
    Ok(cfg)
}

fn apply_key(cfg: &mut ExperimentConfig, key: &str, value: &str) -> Result<(), String> {
    match key {
        "n1" => cfg.n1 = parse_num(key, value)?,
        "n2" => cfg.n2 = parse_num(key, value)?,
        "p" => cfg.p = parse_num(key, value)?,
        "scenario" => cfg.scenario = parse_scenario(value)?,
        "lambda" => cfg.lambda = parse_num(key, value)?,
        "eta" => cfg.eta = parse_num(key, value)?,
        "case" => cfg.case = parse_case(value)?,
        "alpha" => cfg.alpha = parse_num(key, value)?,
        "reps" => cfg.replications = parse_num(key, value)?,
        "seed" => cfg.master_seed = parse_num(key, value)?,
        "tests" => cfg.tests = parse_tests(value)?,
        "threads" => cfg.threads = parse_threads(value)?,
        other => return Err(format!("unknown key '{other}'")),
    }
    Ok(())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse '{value}' for key '{key}'"))
}

pub fn parse_scenario(value: &str) -> Result<Scenario, String> {
    match value.trim() {
        "I" | "i" | "1" => Ok(Scenario::I),
        "II" | "ii" | "2" => Ok(Scenario::II),
        other => Err(format!("unknown scenario '{other}' (expected I or II)")),
    }
}

pub fn parse_case(value: &str) -> Result<AltCase, String> {
    match value.trim() {
        "A" | "a" => Ok(AltCase::A),
        "B" | "b" => Ok(AltCase::B),
        other => Err(format!("unknown case '{other}' (expected A or B)")),
    }
}

pub fn parse_tests(value: &str) -> Result<Vec<TestKind>, String> {
    let tests: Vec<TestKind> = value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    if tests.is_empty() {
        return Err("tests list is empty".into());
    }
    Ok(tests)
}

pub fn parse_threads(value: &str) -> Result<Option<usize>, String> {
    let v = value.trim();
    if v == "auto" {
        return Ok(None);
    }
    v.parse::<usize>()
        .map_err(|_| format!("cannot parse threads '{v}' (expected a count or auto)"))
        .and_then(|t| if t == 0 { Err("threads must be positive".into()) } else { Ok(Some(t)) })
}

/// Render the resolved configuration back as a key-value document (used for
/// the run metadata sidecar).
pub fn render_config(cfg: &ExperimentConfig) -> String {
    let scenario = match cfg.scenario {
        Scenario::I => "I",
        Scenario::II => "II",
    };
    let case = match cfg.case {
        AltCase::A => "A",
        AltCase::B => "B",
    };
    let tests: Vec<&str> = cfg.tests.iter().map(|t| t.name()).collect();
    let threads = cfg.threads.map_or("auto".to_string(), |t| t.to_string());
    format!(
        "n1 = {}\nn2 = {}\np = {}\nscenario = {}\nlambda = {}\neta = {}\ncase = {}\n\
         alpha = {}\nreps = {}\nseed = {}\ntests = {}\nthreads = {}\n",
        cfg.n1,
        cfg.n2,
        cfg.p,
        scenario,
        cfg.lambda,
        cfg.eta,
        case,
        cfg.alpha,
        cfg.replications,
        cfg.master_seed,
        tests.join(","),
        threads
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_document_round_trips() {
        let text = "\
# comment line
n1 = 12
n2 = 18
p = 200
scenario = II
lambda = 50
eta = 0.25
case = B
alpha = 0.05
reps = 400
seed = 99
tests = fs,plugin
threads = 4
";
        let cfg = parse_config_str(text).unwrap();
        assert_eq!(cfg.n1, 12);
        assert_eq!(cfg.n2, 18);
        assert_eq!(cfg.p, 200);
        assert_eq!(cfg.scenario, Scenario::II);
        assert_eq!(cfg.lambda, 50.0);
        assert_eq!(cfg.eta, 0.25);
        assert_eq!(cfg.case, AltCase::B);
        assert_eq!(cfg.replications, 400);
        assert_eq!(cfg.master_seed, 99);
        assert_eq!(cfg.tests, vec![TestKind::Fs, TestKind::Plugin]);
        assert_eq!(cfg.threads, Some(4));

        let rendered = render_config(&cfg);
        let reparsed = parse_config_str(&rendered).unwrap();
        assert_eq!(cfg, reparsed);
    }

    #[test]
    fn defaults_apply_when_keys_missing() {
        let cfg = parse_config_str("p = 25\n").unwrap();
        assert_eq!(cfg.p, 25);
        assert_eq!(cfg.n1, 15);
        assert_eq!(cfg.alpha, 0.05);
        assert_eq!(cfg.threads, None);
    }

    #[test]
    fn bad_inputs_are_config_errors() {
        assert!(parse_config_str("mystery = 1\n").is_err());
        assert!(parse_config_str("p 25\n").is_err());
        assert!(parse_config_str("scenario = III\n").is_err());
        assert!(parse_config_str("tests = fs,bogus\n").is_err());
        assert!(parse_config_str("threads = 0\n").is_err());
    }

    #[test]
    fn threads_auto_means_ambient_pool() {
        assert_eq!(parse_threads("auto").unwrap(), None);
        assert_eq!(parse_threads("8").unwrap(), Some(8));
    }
}
