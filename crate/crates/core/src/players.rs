//! Strategies by name: `name` or `name:key=value,key=value`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::breaker::{
    AdversarialBreaker, InsideHullBreaker, OneRoundBreaker, PerturbedPolygonBreaker, RandomBreaker,
};
use crate::game::{GameConfig, Strategy};
use crate::maker::{BichromStripMaker, GreedyHullMaker, MonoStripMaker, RandomMaker};

const MAKER_SALT: u64 = 0x006d_616b_6572;
const BREAKER_SALT: u64 = 0x0062_7265_616b;

pub const MAKER_NAMES: &[&str] = &["strips-1-1", "strips-biased", "strips-bichrom", "random", "greedy-hull"];
pub const BREAKER_NAMES: &[&str] = &[
    "one-round-double",
    "perturbed-polygon",
    "random",
    "inside-hull",
    "greedy-hull",
    "adversarial",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlayerError {
    #[error("unknown strategy `{0}`")]
    Unknown(String),
    #[error("bad parameter `{0}`")]
    BadParam(String),
    #[error("{0}")]
    Mismatch(String),
}

/// A parsed strategy spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl PlayerSpec {
    pub fn parse(s: &str) -> Result<Self, PlayerError> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let name = name.trim();
        if name.is_empty() {
            return Err(PlayerError::Unknown(s.to_string()));
        }
        let mut params = BTreeMap::new();
        for kv in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| PlayerError::BadParam(kv.to_string()))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(PlayerSpec {
            name: name.to_string(),
            params,
        })
    }

    fn usize_param(&self, key: &str, default: usize) -> Result<usize, PlayerError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| PlayerError::BadParam(format!("{key}={v}"))),
        }
    }

    fn u64_param(&self, key: &str, default: u64) -> Result<u64, PlayerError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| PlayerError::BadParam(format!("{key}={v}"))),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), PlayerError> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(PlayerError::BadParam(format!("{}: unknown key {k}", self.name))),
            None => Ok(()),
        }
    }
}

/// Builds a Maker strategy for the given game.
pub fn maker_by_name(spec: &str, config: &GameConfig) -> Result<Box<dyn Strategy>, PlayerError> {
    let spec = PlayerSpec::parse(spec)?;
    let seed = spec.u64_param("seed", config.seed ^ MAKER_SALT)?;
    Ok(match spec.name.as_str() {
        "strips-1-1" => {
            spec.check_keys(&["t"])?;
            Box::new(MonoStripMaker::one_to_one(config.k, spec.usize_param("t", 1)?))
        }
        "strips-biased" => {
            spec.check_keys(&["t"])?;
            let s = config.bias.ratio();
            let whole = (s.is_integer() && config.bias.maker == num_traits::One::one())
                .then(|| s.to_integer().to_usize())
                .flatten()
                .ok_or_else(|| PlayerError::Mismatch(format!("strips-biased needs bias 1:s with integer s, got {}", config.bias)))?;
            Box::new(MonoStripMaker::biased(config.k, spec.usize_param("t", 1)?, whole))
        }
        "strips-bichrom" => {
            spec.check_keys(&["r"])?;
            Box::new(BichromStripMaker::new(config.k, spec.usize_param("r", 1)?))
        }
        "random" => {
            spec.check_keys(&["seed"])?;
            Box::new(RandomMaker::new(seed))
        }
        "greedy-hull" => {
            spec.check_keys(&["seed"])?;
            Box::new(GreedyHullMaker::new(seed))
        }
        _ => return Err(PlayerError::Unknown(spec.name)),
    })
}

/// Builds a Breaker strategy for the given game.
pub fn breaker_by_name(spec: &str, config: &GameConfig) -> Result<Box<dyn Strategy>, PlayerError> {
    let spec = PlayerSpec::parse(spec)?;
    let seed = spec.u64_param("seed", config.seed ^ BREAKER_SALT)?;
    Ok(match spec.name.as_str() {
        "one-round-double" => {
            spec.check_keys(&[])?;
            Box::new(OneRoundBreaker::new())
        }
        "perturbed-polygon" => {
            spec.check_keys(&["lambda"])?;
            let lambda = spec.usize_param("lambda", 6)?;
            if !(3..=12).contains(&lambda) || crate::geom::AngleThreshold::two_pi_over(lambda as u32).is_err() {
                return Err(PlayerError::BadParam(format!("lambda={lambda}")));
            }
            Box::new(PerturbedPolygonBreaker::new(lambda as u32))
        }
        "random" => {
            spec.check_keys(&["seed"])?;
            Box::new(RandomBreaker::new(seed))
        }
        "inside-hull" | "greedy-hull" => {
            spec.check_keys(&["seed"])?;
            Box::new(InsideHullBreaker::new(seed))
        }
        "adversarial" | "scripted-adversarial" => {
            spec.check_keys(&[])?;
            Box::new(AdversarialBreaker)
        }
        _ => return Err(PlayerError::Unknown(spec.name)),
    })
}
