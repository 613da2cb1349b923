//! Flat `key = value` job files; arrays are comma lists, `#` starts a comment.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::AlgebraParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Basis,
    LightLeaves,
    BsBasis,
    Gram,
    Specht,
    Verify,
    Render,
}

impl Task {
    pub const ALL: [Task; 7] = [
        Task::Basis,
        Task::LightLeaves,
        Task::BsBasis,
        Task::Gram,
        Task::Specht,
        Task::Verify,
        Task::Render,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Task::Basis => "basis",
            Task::LightLeaves => "light-leaves",
            Task::BsBasis => "bs-basis",
            Task::Gram => "gram",
            Task::Specht => "specht",
            Task::Verify => "verify",
            Task::Render => "render",
        }
    }
}

impl FromStr for Task {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown task {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub task: Task,
    pub e: usize,
    pub sigma: Vec<i64>,
    pub h: Vec<usize>,
    pub n: usize,
    /// Work over `F_p` instead of `Q`.
    pub modulus: Option<u64>,
    /// Relation budget for the quotient build.
    pub budget: Option<usize>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// Path-vector policy for `light-leaves`; `all` runs every policy.
    pub policy: String,
    /// Generator families left out of the spanning check.
    pub drop: Vec<String>,
    /// Restrict `gram`/`specht` to one cell.
    pub cell: Option<usize>,
    /// Reference JSON compared by `verify`.
    pub golden: Option<PathBuf>,
    /// `render`: a built-in element name or a JSON file of records.
    pub element: Option<String>,
    /// `render`: a path as 1-based steps; draws the alcove walk.
    pub path: Option<Vec<usize>>,
    /// Enumeration cap for block paths and rex searches.
    pub cap: usize,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            task: Task::Basis,
            e: 4,
            sigma: vec![0],
            h: vec![2],
            n: 4,
            modulus: None,
            budget: None,
            out: None,
            seed: 0,
            policy: "all".into(),
            drop: Vec::new(),
            cell: None,
            golden: None,
            element: None,
            path: None,
            cap: 100_000,
        }
    }
}

fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("{key}: bad entry {s:?}"))))
        .collect()
}

fn one<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Parse(format!("{key}: bad value {v:?}")))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl JobConfig {
    pub fn params(&self) -> Result<AlgebraParams> {
        AlgebraParams::new(self.e, self.sigma.clone(), self.h.clone(), self.n)
    }

    /// Sets one key; empty values clear optional keys.
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        let v = v.trim();
        let opt = |v: &str| (!v.is_empty()).then(|| v.to_string());
        match key {
            "task" => self.task = v.parse()?,
            "e" => self.e = one(key, v)?,
            "sigma" => self.sigma = list(key, v)?,
            "h" => self.h = list(key, v)?,
            "n" => self.n = one(key, v)?,
            "modulus" => self.modulus = opt(v).map(|s| one(key, &s)).transpose()?,
            "budget" => self.budget = opt(v).map(|s| one(key, &s)).transpose()?,
            "out" => self.out = opt(v).map(PathBuf::from),
            "seed" => self.seed = one(key, v)?,
            "policy" => self.policy = v.to_string(),
            "drop" => self.drop = list(key, v)?,
            "cell" => self.cell = opt(v).map(|s| one(key, &s)).transpose()?,
            "golden" => self.golden = opt(v).map(PathBuf::from),
            "element" => self.element = opt(v),
            "path" => self.path = opt(v).map(|s| list(key, &s)).transpose()?,
            "cap" => self.cap = one(key, v)?,
            _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies every `key = value` line of `text` on top of `self`.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", no + 1)))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let mut c = JobConfig::default();
        c.apply_kv(text)?;
        Ok(c)
    }

    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let o = |x: &Option<String>| x.clone().unwrap_or_default();
        let _ = writeln!(s, "task = {}", self.task.name());
        let _ = writeln!(s, "e = {}", self.e);
        let _ = writeln!(s, "sigma = {}", join(&self.sigma));
        let _ = writeln!(s, "h = {}", join(&self.h));
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "modulus = {}", o(&self.modulus.map(|m| m.to_string())));
        let _ = writeln!(s, "budget = {}", o(&self.budget.map(|m| m.to_string())));
        let _ = writeln!(s, "out = {}", o(&self.out.as_ref().map(|p| p.display().to_string())));
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "policy = {}", self.policy);
        let _ = writeln!(s, "drop = {}", join(&self.drop));
        let _ = writeln!(s, "cell = {}", o(&self.cell.map(|m| m.to_string())));
        let _ = writeln!(s, "golden = {}", o(&self.golden.as_ref().map(|p| p.display().to_string())));
        let _ = writeln!(s, "element = {}", o(&self.element));
        let _ = writeln!(s, "path = {}", o(&self.path.as_ref().map(|p| join(p))));
        let _ = writeln!(s, "cap = {}", self.cap);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let c = JobConfig::from_kv(
            "# job\ntask = light-leaves\ne = 7\nsigma = 0, 3\nh = 2,2\nn = 5\nmodulus = 101\npolicy = random:3\npath = 1,2,1\n",
        )
        .unwrap();
        assert_eq!(c.sigma, vec![0, 3]);
        assert_eq!(c.modulus, Some(101));
        assert_eq!(JobConfig::from_kv(&c.to_kv()).unwrap(), c);
        assert!(JobConfig::from_kv("colour = red").is_err());
        assert!(JobConfig::from_kv("e = x").is_err());
        assert!(JobConfig::from_kv("no equals sign").is_err());
    }
}
