#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub fn afa<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_afa"))
        .args(args)
        .output()
        .expect("afa binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

pub fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

/// One invocation and what it must produce.
pub struct Golden {
    pub args: Vec<String>,
    pub code: i32,
    /// Exact stdout, or a required prefix when `prefix` is set.
    pub stdout: String,
    pub prefix: bool,
}

impl Golden {
    pub fn exact(args: &[&str], code: i32, stdout: &str) -> Self {
        Self {
            args: args.iter().map(|s| s.to_string()).collect(),
            code,
            stdout: stdout.to_string(),
            prefix: false,
        }
    }

    pub fn prefix(args: &[&str], code: i32, stdout: &str) -> Self {
        Self {
            prefix: true,
            ..Self::exact(args, code, stdout)
        }
    }

    pub fn check(&self) -> Result<(), String> {
        let out = afa(&self.args);
        let got = stdout(&out);
        let text_ok = if self.prefix {
            got.starts_with(&self.stdout)
        } else {
            got == self.stdout
        };
        if code(&out) == self.code && text_ok {
            Ok(())
        } else {
            Err(format!(
                "afa {}: exit {} (want {}), stdout {:?} (want {}{:?}), stderr {:?}",
                self.args.join(" "),
                code(&out),
                self.code,
                got,
                if self.prefix { "prefix " } else { "" },
                self.stdout,
                stderr(&out)
            ))
        }
    }
}

/// Fixture files written by the gallery command, plus a unary counter.
pub fn fixtures(dir: &Path) {
    for (name, extra) in [
        ("eq", vec![]),
        ("dfa-parity", vec![]),
        ("constant", vec!["--alpha", "1/3"]),
    ] {
        let mut args = vec!["gallery", name, "-o"];
        let p = path(dir, &format!("{name}.json"));
        args.push(&p);
        args.extend(extra);
        let out = afa(&args);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    std::fs::write(dir.join("unary.json"), UNARY_EQ).unwrap();
}

/// The counter of `eq` restricted to the letter `a`: value `1/(1+2n)` on `a^n`.
pub const UNARY_EQ: &str = r#"{
  "format": "afa-v1",
  "kind": "affine",
  "alphabet": ["a"],
  "states": 3,
  "initial": ["1", "0", "0"],
  "accepting": [0],
  "transitions": {
    "a": [["1", "0", "0"], ["1", "1", "0"], ["-1", "0", "1"]]
  }
}
"#;

/// Every subcommand with its expected output on the fixtures in `dir`.
pub fn golden_cases(dir: &Path) -> Vec<Golden> {
    let eq = path(dir, "eq.json");
    let parity = path(dir, "dfa-parity.json");
    let constant = path(dir, "constant.json");
    let unary = path(dir, "unary.json");
    let amp = path(dir, "amp1.json");
    vec![
        Golden::exact(&["validate", &eq], 0, "ok: affine automaton, 3 states, alphabet ab\n"),
        Golden::exact(&["validate", &parity], 0, "ok: stochastic automaton, 2 states, alphabet ab\n"),
        Golden::exact(&["eval", &eq, "--word", "aab"], 0, "1/3 (0.3333333333)\n"),
        Golden::exact(&["eval", &eq, "--word", ""], 0, "1 (1.0000000000)\n"),
        Golden::exact(&["eval", &constant, "--word", "abba"], 0, "1/3 (0.3333333333)\n"),
        Golden::exact(&["eval", &parity, "--word", "aba"], 0, "1 (1.0000000000)\n"),
        Golden::exact(&["member", &eq, "--word", "ab", "--cutpoint", "1/2"], 0, "true\n"),
        Golden::exact(&["member", &eq, "--word", "aab", "--cutpoint", "1/2"], 1, "false\n"),
        Golden::exact(&["member", &constant, "--word", "a", "--cutpoint", "1/3"], 1, "false\n"),
        Golden::exact(&["compose", "amplify", &eq, "--rounds", "1", "-o", &amp], 0, ""),
        Golden::exact(&["eval", &amp, "--word", "aab"], 0, "7/27 (0.2592592593)\n"),
        Golden::prefix(&["compose", "tensor", &eq, &eq], 0, "{\n  \"format\": \"afa-v1\","),
        Golden::prefix(&["compose", "complement", &eq], 0, "{\n  \"format\": \"afa-v1\","),
        Golden::prefix(&["compose", "convex", &eq, &constant, "--alpha", "1/3"], 0, "{\n"),
        Golden::prefix(&["compose", "shift", &eq, "--from", "1/2", "--to", "1/4"], 0, "{\n"),
        Golden::prefix(&["compose", "union", &eq, &parity], 0, "{\n"),
        Golden::prefix(&["compose", "intersect", &eq, &parity], 0, "{\n"),
        Golden::prefix(&["normalize", "canonical", &eq], 0, "{\n"),
        Golden::prefix(&["normalize", "full", &eq, "--cutpoint", "1/2"], 0, "{\n"),
        Golden::exact(&["normalize", "bounded", &constant], 2, ""),
        Golden::prefix(&["gallery", "eq3", "--rounds", "0"], 0, "{\n"),
        Golden::exact(&["gallery", "eq3"], 2, ""),
        Golden::exact(
            &["analyze", "density", "--lang", "prime", "--max", "1000"],
            0,
            "n: 1000\nmembers: 168\nratio_at_n: 0.1678321678\nrunning_min: 0.0000000000\n",
        ),
        Golden::exact(
            &["analyze", "density", "--lang", "poly", "--coeffs", "1,0,0,1", "--max", "100"],
            0,
            "n: 100\nmembers: 5\nratio_at_n: 0.0495049505\nrunning_min: 0.0000000000\n",
        ),
        Golden::exact(
            &["analyze", "scan", &unary, "--max-n", "2", "--exact"],
            0,
            "n,F_float,F_exact_num,F_exact_den\n0,1.00000000000000000,1,1\n1,0.33333333333333331,1,3\n2,0.20000000000000001,1,5\n",
        ),
        Golden::exact(
            &["analyze", "progression", &unary, "--h", "2", "--q", "3", "--count", "3", "--exact"],
            0,
            "n,F_float,F_exact_num,F_exact_den\n2,0.20000000000000001,1,5\n5,0.09090909090909091,1,11\n8,0.05882352941176471,1,17\n",
        ),
        Golden::exact(
            &["analyze", "progression", &unary, "--count", "2"],
            0,
            "n,F_float,F_exact_num,F_exact_den\n0,1.00000000000000000,,\n1,0.33333333333333331,,\n",
        ),
        Golden::exact(
            &["analyze", "spectrum", &parity, "--symbol", "a"],
            0,
            "re,im,modulus,angle,rational_angle\n1.000000000000,0.000000000000,1.000000000000,0.000000000000,0/1\n-1.000000000000,0.000000000000,1.000000000000,0.500000000000,1/2\n",
        ),
        Golden::exact(
            &["analyze", "gap", &eq, "--cutpoint", "1/2", "--max-len", "4"],
            0,
            "accepted: 9\nrejected: 22\nmin_accepted: 1\nmax_rejected: 1/3\ngap: 2/3\n",
        ),
        Golden::exact(&["analyze", "scan", &eq, "--max-n", "3"], 2, ""),
        Golden::exact(&["frobnicate"], 2, ""),
        Golden::exact(&["eval", &path(dir, "missing.json"), "--word", "a"], 2, ""),
    ]
}
