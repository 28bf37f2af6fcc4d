//! Problem files and the names they define.

use std::collections::BTreeMap;

use gamble_algebra::algebra::QuestionSet;
use gamble_algebra::phi::closure;
use gamble_algebra::{Gamble, Partition, PhiElement, PossibilitySpace, VariableSystem};
use serde::Deserialize;
use serde_json::Value;

/// A bad input: the message and, when known, where it was found.
#[derive(Debug)]
pub struct InputError {
    pub at: Option<String>,
    pub message: String,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            at: None,
            message: message.into(),
        }
    }

    pub fn at(mut self, at: impl Into<String>) -> Self {
        if self.at.is_none() {
            self.at = Some(at.into());
        }
        self
    }
}

impl From<gamble_algebra::Error> for InputError {
    fn from(e: gamble_algebra::Error) -> Self {
        InputError::new(e.to_string())
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.at {
            Some(at) => write!(f, "{at}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

pub type Input<T> = Result<T, InputError>;

fn json_error(source: &str, e: &serde_json::Error) -> InputError {
    InputError::new(e.to_string()).at(format!("{source}:{}:{}", e.line(), e.column()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    set: Value,
    label: Value,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    space: Option<usize>,
    system: Option<VariableSystem>,
    #[serde(default)]
    partitions: BTreeMap<String, Value>,
    #[serde(default)]
    sets: BTreeMap<String, Value>,
    #[serde(default)]
    gambles: BTreeMap<String, Value>,
    #[serde(default)]
    pieces: BTreeMap<String, RawPiece>,
    #[serde(default)]
    script: Vec<Vec<String>>,
}

/// A parsed problem file. Without one, the space is taken from the first
/// inline object and the system defaults to nothing.
#[derive(Debug, Default)]
pub struct Problem {
    space: Option<PossibilitySpace>,
    system: Option<VariableSystem>,
    partitions: BTreeMap<String, Partition>,
    sets: BTreeMap<String, Vec<Gamble>>,
    gambles: BTreeMap<String, Gamble>,
    pieces: BTreeMap<String, (Vec<Gamble>, Partition)>,
    pub script: Vec<Vec<String>>,
}

impl Problem {
    pub fn parse(source: &str, text: &str, max_dim: usize) -> Input<Problem> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| json_error(source, &e))?;
        let space = match (&raw.system, raw.space) {
            (Some(sys), Some(n)) if sys.space().size() != n => {
                return Err(InputError::new(format!(
                    "space has {n} worlds but the system has {}",
                    sys.space().size()
                ))
                .at(source))
            }
            (Some(sys), _) => Some(sys.space()),
            (None, Some(n)) => {
                Some(PossibilitySpace::new(n).map_err(|e| InputError::from(e).at(source))?)
            }
            (None, None) => None,
        };
        let mut p = Problem {
            space,
            system: raw.system,
            script: raw.script,
            ..Problem::default()
        };
        if let Some(s) = p.space {
            check_dim(s, max_dim).map_err(|e| e.at(source))?;
        }
        for (name, v) in &raw.partitions {
            let at = format!("{source}: partitions.{name}");
            let part = p.partition_value(v).map_err(|e| e.at(&at))?;
            p.partitions.insert(name.clone(), part);
        }
        for (name, v) in &raw.sets {
            let at = format!("{source}: sets.{name}");
            let set = p.set_value(v).map_err(|e| e.at(&at))?;
            p.sets.insert(name.clone(), set);
        }
        for (name, v) in &raw.gambles {
            let at = format!("{source}: gambles.{name}");
            let g = p.gamble_value(v).map_err(|e| e.at(&at))?;
            p.gambles.insert(name.clone(), g);
        }
        for (name, piece) in &raw.pieces {
            let at = format!("{source}: pieces.{name}");
            let set = p.set_value(&piece.set).map_err(|e| e.at(&at))?;
            let label = p.partition_value(&piece.label).map_err(|e| e.at(&at))?;
            p.pieces.insert(name.clone(), (set, label));
        }
        if let Some(s) = p.space {
            check_dim(s, max_dim)?;
        }
        Ok(p)
    }

    pub fn with_system(system: VariableSystem) -> Problem {
        Problem {
            space: Some(system.space()),
            system: Some(system),
            ..Problem::default()
        }
    }

    pub fn space(&self) -> Option<PossibilitySpace> {
        self.space
    }

    pub fn system(&self) -> Option<&VariableSystem> {
        self.system.as_ref()
    }

    fn fix_space(&mut self, s: PossibilitySpace) -> Input<()> {
        match self.space {
            Some(t) if t != s => Err(InputError::new(format!(
                "object over {} worlds, but the space has {}",
                s.size(),
                t.size()
            ))),
            Some(_) => Ok(()),
            None => {
                self.space = Some(s);
                Ok(())
            }
        }
    }

    fn space_or_err(&self) -> Input<PossibilitySpace> {
        self.space.ok_or_else(|| {
            InputError::new("the space is unknown; give a problem file or an inline set first")
        })
    }

    fn partition_value(&mut self, v: &Value) -> Input<Partition> {
        match v {
            Value::String(name) => self.partition(name),
            _ => {
                let p: Partition = serde_json::from_value(v.clone())
                    .map_err(|e| InputError::new(e.to_string()))?;
                self.fix_space(p.space())?;
                Ok(p)
            }
        }
    }

    fn gamble_value(&mut self, v: &Value) -> Input<Gamble> {
        match v {
            Value::String(name) => self.gamble(name),
            _ => {
                let g: Gamble = serde_json::from_value(v.clone())
                    .map_err(|e| InputError::new(e.to_string()))?;
                self.fix_space(g.space())?;
                Ok(g)
            }
        }
    }

    fn set_value(&mut self, v: &Value) -> Input<Vec<Gamble>> {
        match v {
            Value::String(name) => self.set(name),
            Value::Array(items) => items.iter().map(|g| self.gamble_value(g)).collect(),
            _ => Err(InputError::new("a set is a name or an array of gambles")),
        }
    }

    /// Parses a command-line argument as inline JSON when it looks like
    /// JSON, and as a name otherwise.
    fn argument(arg: &str, which: &str) -> Input<Value> {
        let t = arg.trim_start();
        if t.starts_with('[') || t.starts_with('{') {
            serde_json::from_str(arg).map_err(|e| json_error(which, &e))
        } else {
            Ok(Value::String(arg.to_string()))
        }
    }

    /// `top`, `bottom`, `cyl:i,j,…` for a system, a file name, or inline
    /// JSON blocks.
    pub fn partition(&mut self, arg: &str) -> Input<Partition> {
        if let Some(p) = self.partitions.get(arg) {
            return Ok(p.clone());
        }
        match arg {
            "top" => return Ok(Partition::top(self.space_or_err()?)),
            "bottom" => return Ok(Partition::bottom(self.space_or_err()?)),
            _ => {}
        }
        if let Some(vars) = arg.strip_prefix("cyl:") {
            let sys = self
                .system
                .as_ref()
                .ok_or_else(|| InputError::new("cylinders need a variable system"))?;
            let vars: Vec<usize> = if vars.is_empty() {
                Vec::new()
            } else {
                vars.split(',')
                    .map(|v| {
                        v.trim()
                            .parse()
                            .map_err(|_| InputError::new(format!("bad variable index {v:?}")))
                    })
                    .collect::<Input<_>>()?
            };
            return Ok(sys.cylinder(&vars)?.clone());
        }
        match Self::argument(arg, "partition")? {
            Value::String(name) => Err(InputError::new(format!("unknown partition {name:?}"))),
            v => self.partition_value(&v),
        }
    }

    pub fn gamble(&mut self, arg: &str) -> Input<Gamble> {
        if let Some(g) = self.gambles.get(arg) {
            return Ok(g.clone());
        }
        match Self::argument(arg, "gamble")? {
            Value::String(name) => Err(InputError::new(format!("unknown gamble {name:?}"))),
            v => self.gamble_value(&v),
        }
    }

    pub fn set(&mut self, arg: &str) -> Input<Vec<Gamble>> {
        if let Some(s) = self.sets.get(arg) {
            return Ok(s.clone());
        }
        match Self::argument(arg, "set")? {
            Value::String(name) => Err(InputError::new(format!("unknown set {name:?}"))),
            v => self.set_value(&v),
        }
    }

    /// The closure of a set, over the problem's space.
    pub fn element(&mut self, arg: &str) -> Input<PhiElement> {
        let set = self.set(arg)?;
        let space = self.space_or_err()?;
        Ok(closure(space, &set)?)
    }

    pub fn piece(&mut self, arg: &str) -> Input<(PhiElement, Partition)> {
        let (set, label) = match self.pieces.get(arg) {
            Some(p) => p.clone(),
            None => match Self::argument(arg, "piece")? {
                Value::String(name) => {
                    return Err(InputError::new(format!("unknown piece {name:?}")))
                }
                v => {
                    let raw: RawPiece =
                        serde_json::from_value(v).map_err(|e| InputError::new(e.to_string()))?;
                    (self.set_value(&raw.set)?, self.partition_value(&raw.label)?)
                }
            },
        };
        let space = self.space_or_err()?;
        Ok((closure(space, &set)?, label))
    }

    /// Questions for labels and suites: the system's cylinders, or the
    /// named partitions with top and bottom, closed under join.
    pub fn questions(&self, extra: &[Partition]) -> Input<QuestionSet> {
        if let Some(sys) = &self.system {
            if extra.iter().all(|p| sys.question_set().contains(p)) {
                return Ok(sys.question_set());
            }
        }
        let space = self.space_or_err()?;
        let mut ps: Vec<Partition> = vec![Partition::bottom(space), Partition::top(space)];
        ps.extend(self.partitions.values().cloned());
        ps.extend_from_slice(extra);
        Ok(QuestionSet::generated_by(ps)?)
    }

    pub fn check_dim(&self, max_dim: usize) -> Input<()> {
        match self.space {
            Some(s) => check_dim(s, max_dim),
            None => Ok(()),
        }
    }
}

fn check_dim(s: PossibilitySpace, max_dim: usize) -> Input<()> {
    if s.size() > max_dim {
        return Err(InputError::new(format!(
            "space of {} worlds exceeds GA_MAX_DIM={max_dim}",
            s.size()
        )));
    }
    Ok(())
}
