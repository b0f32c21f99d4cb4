//! `run`: validate → spectra → census → fit → asymptotics (→ class sums),
//! driven by one key=value config and recorded in a manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use apartment_core::census::WeightConvention;
use apartment_core::hecke_counts::CountConvention;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::{self, ComplexOptions};
use crate::error::{CliError, CliResult};
use crate::formats::{parse_config, read_census, read_lattice, read_records, read_text, to_json, write_census};

const KEYS: [&str; 14] = [
    "complex", "subgroup", "limit", "double_cover", "convention", "weights", "max_k", "window", "lattice", "sublattice",
    "records", "places", "degree", "output",
];

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: BTreeMap<String, String>,
    pub convention: CountConvention,
    pub weights: WeightConvention,
    /// Every stage is deterministic; no random seeds are consumed.
    pub seeds: Vec<u64>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub timing_ms: BTreeMap<String, u128>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

struct Config {
    raw: BTreeMap<String, String>,
    base: PathBuf,
}

impl Config {
    fn get(&self, k: &str) -> Option<&str> {
        self.raw.get(k).map(String::as_str).filter(|v| !v.is_empty())
    }

    fn path(&self, k: &str) -> Option<PathBuf> {
        self.get(k).map(|v| self.base.join(v))
    }

    fn parse<T: std::str::FromStr>(&self, k: &str) -> CliResult<Option<T>> {
        self.get(k)
            .map(|v| v.parse().map_err(|_| CliError::Invalid(format!("config key `{k}`: cannot parse `{v}`"))))
            .transpose()
    }
}

/// Artifacts written so far; removed unless the run completes.
struct Outputs {
    dir: PathBuf,
    created_dir: bool,
    written: Vec<(String, String)>,
    done: bool,
}

impl Outputs {
    fn write(&mut self, name: &str, contents: &str) -> CliResult<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.written.push((name.to_string(), sha256_hex(contents.as_bytes())));
        Ok(())
    }
}

impl Drop for Outputs {
    fn drop(&mut self) {
        if self.done {
            return;
        }
        for (name, _) in &self.written {
            let _ = std::fs::remove_file(self.dir.join(name));
        }
        if self.created_dir {
            let _ = std::fs::remove_dir(&self.dir);
        }
    }
}

fn stage<T>(name: &'static str, timing: &mut BTreeMap<String, u128>, f: impl FnOnce() -> CliResult<T>) -> CliResult<T> {
    let start = Instant::now();
    let out = f().map_err(|e| e.in_stage(name))?;
    timing.insert(name.to_string(), start.elapsed().as_millis());
    Ok(out)
}

/// Runs the pipeline described by the config file; returns the manifest.
pub fn run_pipeline(config_path: &Path) -> CliResult<RunManifest> {
    let text = read_text(config_path).map_err(|e| e.in_stage("config"))?;
    let raw = parse_config(&config_path.display().to_string(), &text).map_err(|e| e.in_stage("config"))?;
    if let Some(k) = raw.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(CliError::Invalid(format!("unknown config key `{k}`")).in_stage("config"));
    }
    let cfg = Config { raw, base: config_path.parent().map(Path::to_path_buf).unwrap_or_default() };
    let mut timing = BTreeMap::new();

    let settings = stage("config", &mut timing, || {
        let need = |k: &str| cfg.get(k).ok_or_else(|| CliError::Invalid(format!("config key `{k}` is required")));
        need("complex")?;
        need("output")?;
        let max_k: usize = cfg.parse("max_k")?.ok_or_else(|| CliError::Invalid("config key `max_k` is required".into()))?;
        let convention: CountConvention = cfg.parse("convention")?.unwrap_or(CountConvention::Iwahori);
        let weights: WeightConvention = cfg.parse("weights")?.unwrap_or(WeightConvention::IndPrimitiveLength);
        let double_cover: bool = cfg.parse("double_cover")?.unwrap_or(false);
        Ok((max_k, convention, weights, double_cover))
    })?;
    let (max_k, convention, weights, double_cover) = settings;

    // every referenced input must exist before any work starts
    let mut inputs = Vec::new();
    let loaded = stage("validate", &mut timing, || {
        for key in ["complex", "subgroup", "lattice", "sublattice", "records"] {
            if let (Some(v), Some(p)) = (cfg.get(key), cfg.path(key)) {
                let bytes = std::fs::read(&p).map_err(|e| CliError::io(&p, e))?;
                inputs.push(FileDigest { path: v.to_string(), sha256: sha256_hex(&bytes) });
            }
        }
        let subgroup = cfg.path("subgroup");
        let opts = ComplexOptions { subgroup: subgroup.as_deref(), limit: cfg.parse("limit")?, double_cover };
        commands::load_complex(&cfg.path("complex").unwrap(), &opts)
    })?;

    let dir = cfg.path("output").unwrap();
    let created_dir = !dir.exists();
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e).in_stage("validate"))?;
    let mut out = Outputs { dir, created_dir, written: Vec::new(), done: false };
    out.write("complex.json", &to_json(&commands::chamber_document(&loaded.chambers))).map_err(|e| e.in_stage("validate"))?;

    let spec = stage("spectra", &mut timing, || {
        let (data, _) = commands::spectra(&loaded.chambers, convention)?;
        out.write("spectra.json", &to_json(&crate::formats::SpectraDocument::from(&data)))?;
        Ok(data)
    })?;

    let census = stage("census", &mut timing, || {
        let c = commands::census(&loaded, max_k, weights)?;
        let text = write_census(&c);
        out.write("census.csv", &text)?;
        // what downstream stages see is exactly what was written
        read_census("census.csv", &text)
    })?;

    let window: Option<usize> = cfg.parse("window").map_err(|e| e.in_stage("fit"))?;
    stage("fit", &mut timing, || {
        let fit = commands::zeta_fit(&census, &spec, window)?;
        out.write("fit.json", &to_json(&fit))
    })?;

    let report = stage("asymptotics", &mut timing, || {
        let lattice = cfg.path("lattice").map(|p| read_lattice(&p.display().to_string(), &read_text(&p)?)).transpose()?;
        let sub = cfg.path("sublattice").map(|p| read_lattice(&p.display().to_string(), &read_text(&p)?)).transpose()?;
        let doc = commands::zeta_asymptotics(&census, &spec, lattice, sub, window)?;
        out.write("asymptotics.json", &to_json(&doc))?;
        Ok(doc.report)
    })?;

    if let Some(p) = cfg.path("records") {
        stage("class-sum", &mut timing, || {
            let records = read_records(&p.display().to_string(), &read_text(&p)?)?;
            let places: Vec<String> =
                cfg.get("places").map(|s| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()).unwrap_or_default();
            let doc = commands::class_sum(&records, &report, &places, cfg.parse("degree")?)?;
            out.write("class_sums.json", &to_json(&doc))
        })?;
    }

    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.raw.clone(),
        convention,
        weights,
        seeds: Vec::new(),
        inputs,
        outputs: out.written.iter().map(|(p, h)| FileDigest { path: p.clone(), sha256: h.clone() }).collect(),
        timing_ms: timing,
    };
    out.write(MANIFEST, &to_json(&manifest)).map_err(|e| e.in_stage("manifest"))?;
    out.done = true;
    Ok(manifest)
}
