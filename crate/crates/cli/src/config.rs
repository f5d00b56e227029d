//! Run configuration and its flat `key = value` file format.
//!
//! Per-part lists are comma separated; every entry is an integer or an
//! inclusive range `lo..hi`. A key such as `n2 = 5..9` sets one entry of a
//! list. Ranged entries expand into a grid of runs.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;

/// Inclusive integer range; a single value when `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn single(v: u32) -> Span {
        Span { lo: v, hi: v }
    }

    pub fn values(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl FromStr for Span {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Span> {
        let s = s.trim();
        let int = |x: &str| {
            x.trim()
                .parse::<u32>()
                .with_context(|| format!("not an integer: {x:?}"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (int(lo)?, int(hi.strip_prefix('=').unwrap_or(hi))?);
                if lo > hi {
                    bail!("empty range {s:?}");
                }
                Ok(Span { lo, hi })
            }
            None => Ok(Span::single(int(s)?)),
        }
    }
}

/// Per-part values, one span per part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartList(pub Vec<Span>);

impl FromStr for PartList {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<PartList> {
        let spans = s.split(',').map(Span::from_str).collect::<Result<Vec<_>>>()?;
        Ok(PartList(spans))
    }
}

impl fmt::Display for PartList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Span::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl PartList {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sets entry `i` (0-based), padding with copies of the last entry.
    fn set(&mut self, i: usize, span: Span) -> Result<()> {
        if i > self.0.len() {
            bail!("part {} set before part {}", i + 1, self.0.len() + 1);
        }
        if i == self.0.len() {
            self.0.push(span);
        } else {
            self.0[i] = span;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    Alpha,
    Crossmax,
    Pairmax,
    Fragments,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// The product pair beating the bound when a hypothesis fails.
    Remark2,
    /// A single set against every set meeting it.
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    /// Size-estimate margins of every imprimitive shape.
    Claim3,
    /// `H(x)` roots and the balanced-fragment inequality.
    H,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn parse_enum<T: ValueEnum>(key: &str, v: &str) -> Result<T> {
    T::from_str(v, true).map_err(|_| anyhow!("{key}: unknown value {v:?}"))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub n: PartList,
    pub k: PartList,
    pub t: PartList,
    pub s: PartList,
    pub m: Option<Span>,
    /// Distinguished part, 1-based.
    pub j: Option<Span>,
    pub exhaustive: bool,
    pub construction: Option<Construction>,
    pub grid: Option<GridKind>,
    pub pmax: Option<u32>,
    pub nmax: Option<u32>,
    pub h_poly: bool,
    /// Random systems checked against the bound per run.
    pub random: u64,
    pub output: OutputFormat,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub threads: Option<usize>,
    pub work_limit: Option<u64>,
    pub node_limit: Option<u64>,
    pub max_systems: Option<usize>,
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => bail!("{key}: expected true or false, got {v:?}"),
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| anyhow!("{key}: not a number: {v:?}"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", no + 1))?;
            c.set(key.trim(), value.trim())
                .with_context(|| format!("line {}", no + 1))?;
        }
        Ok(c)
    }

    fn list_mut(&mut self, name: &str) -> Option<&mut PartList> {
        match name {
            "n" => Some(&mut self.n),
            "k" => Some(&mut self.k),
            "t" => Some(&mut self.t),
            "s" => Some(&mut self.s),
            _ => None,
        }
    }

    fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "command" => self.command = Some(parse_enum(key, v)?),
            "n" | "k" | "t" | "s" => *self.list_mut(key).expect("list key") = v.parse()?,
            "m" => self.m = Some(v.parse()?),
            "j" => self.j = Some(v.parse()?),
            "exhaustive" => self.exhaustive = parse_bool(key, v)?,
            "construction" => self.construction = Some(parse_enum(key, v)?),
            "grid" => self.grid = Some(parse_enum(key, v)?),
            "pmax" => self.pmax = Some(parse_num(key, v)?),
            "nmax" => self.nmax = Some(parse_num(key, v)?),
            "h_poly" => self.h_poly = parse_bool(key, v)?,
            "random" => self.random = parse_num(key, v)?,
            "output" => self.output = parse_enum(key, v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "seed" => self.seed = parse_num(key, v)?,
            "threads" => self.threads = Some(parse_num(key, v)?),
            "work_limit" => self.work_limit = Some(parse_num(key, v)?),
            "node_limit" => self.node_limit = Some(parse_num(key, v)?),
            "max_systems" => self.max_systems = Some(parse_num(key, v)?),
            _ => {
                let (name, index) = key.split_at(1);
                let i: usize = index.parse().map_err(|_| anyhow!("unknown key {key:?}"))?;
                let list = self.list_mut(name).ok_or_else(|| anyhow!("unknown key {key:?}"))?;
                if i == 0 {
                    bail!("{key}: parts are numbered from 1");
                }
                list.set(i - 1, v.parse()?)?;
            }
        }
        Ok(())
    }

    /// Every field that differs from the default, one `key = value` per line.
    pub fn to_config_string(&self) -> String {
        let mut lines = Vec::new();
        let mut push = |k: &str, v: String| lines.push(format!("{k} = {v}"));
        if let Some(c) = self.command {
            push("command", value_name(c));
        }
        for (name, list) in [("n", &self.n), ("k", &self.k), ("t", &self.t), ("s", &self.s)] {
            if !list.is_empty() {
                push(name, list.to_string());
            }
        }
        if let Some(m) = self.m {
            push("m", m.to_string());
        }
        if let Some(j) = self.j {
            push("j", j.to_string());
        }
        if self.exhaustive {
            push("exhaustive", "true".into());
        }
        if let Some(c) = self.construction {
            push("construction", value_name(c));
        }
        if let Some(g) = self.grid {
            push("grid", value_name(g));
        }
        if let Some(p) = self.pmax {
            push("pmax", p.to_string());
        }
        if let Some(n) = self.nmax {
            push("nmax", n.to_string());
        }
        if self.h_poly {
            push("h_poly", "true".into());
        }
        if self.random != 0 {
            push("random", self.random.to_string());
        }
        if self.output != OutputFormat::Text {
            push("output", value_name(self.output));
        }
        if let Some(o) = &self.out {
            push("out", o.display().to_string());
        }
        if self.seed != 0 {
            push("seed", self.seed.to_string());
        }
        if let Some(t) = self.threads {
            push("threads", t.to_string());
        }
        if let Some(w) = self.work_limit {
            push("work_limit", w.to_string());
        }
        if let Some(w) = self.node_limit {
            push("node_limit", w.to_string());
        }
        if let Some(w) = self.max_systems {
            push("max_systems", w.to_string());
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_lists_ranges_and_part_keys() {
        let c = RunConfig::parse(
            "# sweep\ncommand = fragments\nn = 5,5\nn2 = 5..9\nt = 2,2\ns = 2,2  # both parts\nj = 2\noutput = json\n",
        )
        .unwrap();
        assert_eq!(c.command, Some(CommandKind::Fragments));
        assert_eq!(c.n, PartList(vec![Span::single(5), Span { lo: 5, hi: 9 }]));
        assert_eq!(c.j, Some(Span::single(2)));
        assert_eq!(c.output, OutputFormat::Json);
        let c = RunConfig::parse("n1 = 4\nn2 = 5\nk = 1,2\n").unwrap();
        assert_eq!(c.n.to_string(), "4,5");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("n = 5..4\n").is_err());
        assert!(RunConfig::parse("colour = red\n").is_err());
        assert!(RunConfig::parse("n3 = 5\n").is_err());
        assert!(RunConfig::parse("n0 = 5\n").is_err());
        assert!(RunConfig::parse("output = xml\n").is_err());
        assert!(RunConfig::parse("just text\n").is_err());
    }

    fn span() -> impl Strategy<Value = Span> {
        (1u32..40, 0u32..5).prop_map(|(lo, w)| Span { lo, hi: lo + w })
    }

    fn list() -> impl Strategy<Value = PartList> {
        prop::collection::vec(span(), 0..4).prop_map(PartList)
    }

    fn config() -> impl Strategy<Value = RunConfig> {
        let head = (
            prop::option::of(prop::sample::select(CommandKind::value_variants().to_vec())),
            list(),
            list(),
            list(),
            list(),
            prop::option::of(span()),
            prop::option::of(span()),
            any::<bool>(),
            prop::option::of(prop::sample::select(Construction::value_variants().to_vec())),
            prop::option::of(prop::sample::select(GridKind::value_variants().to_vec())),
        );
        let tail = (
            prop::option::of(2u32..5),
            prop::option::of(5u32..12),
            any::<bool>(),
            0u64..1000,
            prop::sample::select(OutputFormat::value_variants().to_vec()),
            prop::option::of("[a-z]{1,8}\\.json"),
            any::<u64>(),
            prop::option::of(1usize..16),
            prop::option::of(any::<u64>()),
            prop::option::of(any::<u64>()),
            prop::option::of(any::<usize>()),
        );
        (head, tail).prop_map(|(h, t)| RunConfig {
            command: h.0,
            n: h.1,
            k: h.2,
            t: h.3,
            s: h.4,
            m: h.5,
            j: h.6,
            exhaustive: h.7,
            construction: h.8,
            grid: h.9,
            pmax: t.0,
            nmax: t.1,
            h_poly: t.2,
            random: t.3,
            output: t.4,
            out: t.5.map(PathBuf::from),
            seed: t.6,
            threads: t.7,
            work_limit: t.8,
            node_limit: t.9,
            max_systems: t.10,
        })
    }

    proptest! {
        #[test]
        fn config_round_trips(c in config()) {
            let text = c.to_config_string();
            prop_assert_eq!(RunConfig::parse(&text).unwrap(), c);
        }
    }
}
