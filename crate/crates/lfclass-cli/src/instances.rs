//! Built-in instances and file ingestion.

use anyhow::{anyhow, bail, Context};
use lfclass::dirichlet::{parse_character_spec, CharacterGroup, DirichletCharacter};
use lfclass::lfunc::{parse_coefficient_records, spec_from_records, GammaData, LFunctionSpec};
use lfclass::zeros::ZeroRecord;
use lfclass::C64;
use std::path::{Path, PathBuf};

/// Bundled weight-12 level-1 eigenvalue data (regenerate with the
/// `generate_hecke_data` example).
pub const DELTA_DATA: &str = include_str!("../data/delta_ap.txt");

/// Resolves a data path: absolute and existing relative paths are used as
/// given; otherwise the `LFCLASS_DATA` directory is consulted.
pub fn resolve_data_path(path: &str) -> PathBuf {
    let direct = PathBuf::from(path);
    if direct.is_absolute() || direct.exists() {
        return direct;
    }
    if let Ok(base) = std::env::var("LFCLASS_DATA") {
        let candidate = Path::new(&base).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    direct
}

/// The modulus-1 character (the zeta instance).
pub fn zeta_character() -> DirichletCharacter {
    CharacterGroup::new(1)
        .expect("modulus 1")
        .character(0)
        .expect("principal character")
}

/// Resolves `q,index` (or the generator-image grammar) to a character.
pub fn character(selector: &str) -> anyhow::Result<DirichletCharacter> {
    let (q, idx) = parse_character_spec(selector)
        .map_err(|e| anyhow!("bad character selector {selector:?}: {e}"))?;
    let group = CharacterGroup::new(q).map_err(|e| anyhow!("{e}"))?;
    Ok(group.character(idx).map_err(|e| anyhow!("{e}"))?)
}

/// The degree-2 spec of the bundled holomorphic form data.
pub fn delta_spec() -> anyhow::Result<LFunctionSpec> {
    spec_from_text(DELTA_DATA, "delta")
}

/// A degree-2 spec from a coefficient file's text, under the split gamma
/// convention for weight 12 (shifts 11/2 and 13/2).
pub fn spec_from_text(text: &str, label: &str) -> anyhow::Result<LFunctionSpec> {
    let records = parse_coefficient_records(text).map_err(|e| anyhow!("{e}"))?;
    let gamma = GammaData::new(
        1,
        vec![C64::new(5.5, 0.0), C64::new(6.5, 0.0)],
        2,
        0,
        C64::new(1.0, 0.0),
    )
    .map_err(|e| anyhow!("{e}"))?;
    spec_from_records(records, gamma, label.into()).map_err(|e| anyhow!("{e}"))
}

/// The paired instance `Δ × Δ~`, a degree-4 member with a simple pole.
pub fn delta_rs_spec() -> anyhow::Result<LFunctionSpec> {
    let d = delta_spec()?;
    d.rs_pair(&d.contragredient(), 1)
        .map_err(|e| anyhow!("{e}"))
}

/// Instance selector for the sieve-side commands.
pub fn sieve_instance(name: &str) -> anyhow::Result<(LFunctionSpec, f64)> {
    match name {
        // The zeta instance is its own pairing; the residue is exactly 1.
        "zeta" => Ok((LFunctionSpec::zeta(), 1.0)),
        "delta-rs" => {
            // No continuation evaluator exists for the paired instance at
            // desk scale, so no residue is available; window sums do not
            // need one.
            bail!("instance delta-rs carries no residue; only bt-window supports it")
        }
        path => {
            let resolved = resolve_data_path(path);
            let text = std::fs::read_to_string(&resolved)
                .with_context(|| format!("reading instance file {}", resolved.display()))?;
            let spec = spec_from_text(&text, path)?;
            bail!(
                "instance {} parsed (degree {}), but no residue is available for sieve bounds",
                path,
                spec.gamma.degree
            )
        }
    }
}

/// Instance selector for the window-sum command (needs only λ data).
pub fn window_instance(name: &str) -> anyhow::Result<LFunctionSpec> {
    match name {
        "zeta" => Ok(LFunctionSpec::zeta()),
        "delta-rs" => delta_rs_spec(),
        path => {
            let resolved = resolve_data_path(path);
            let text = std::fs::read_to_string(&resolved)
                .with_context(|| format!("reading instance file {}", resolved.display()))?;
            let d = spec_from_text(&text, path)?;
            d.rs_pair(&d.contragredient(), 1)
                .map_err(|e| anyhow!("{e}"))
        }
    }
}

/// Zero list export: `beta,gamma,residual` per line.
pub fn zeros_to_csv(records: &[ZeroRecord]) -> String {
    let mut out = String::from("beta,gamma,residual\n");
    for r in records {
        out.push_str(&format!(
            "{:.15},{:.15},{:.3e}\n",
            r.beta, r.gamma, r.residual
        ));
    }
    out
}

/// Zero list import in the same format.
pub fn zeros_from_csv(text: &str) -> anyhow::Result<Vec<ZeroRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("beta") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 2 {
            bail!("line {}: expected beta,gamma[,residual]", i + 1);
        }
        let beta: f64 = fields[0]
            .parse()
            .with_context(|| format!("line {}", i + 1))?;
        let gamma: f64 = fields[1]
            .parse()
            .with_context(|| format!("line {}", i + 1))?;
        let residual: f64 = fields
            .get(2)
            .map(|f| f.parse())
            .transpose()
            .with_context(|| format!("line {}", i + 1))?
            .unwrap_or(0.0);
        out.push(ZeroRecord {
            beta,
            gamma,
            residual,
            multiplicity: 1,
        });
    }
    Ok(out)
}

/// Reads a rep-pair JSON file: either a single local representation (the
/// pair is completed with its contragredient) or `[rep, rep']`.
pub fn read_rep_pair(
    path: &Path,
) -> anyhow::Result<(
    lfclass::rankin_selberg::GenericRepLocal,
    lfclass::rankin_selberg::GenericRepLocal,
)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading rep file {}", path.display()))?;
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum OneOrPair {
        One(RawRep),
        Pair(RawRep, RawRep),
    }
    #[derive(serde::Deserialize)]
    struct RawRep {
        p: u64,
        segments: Vec<lfclass::rankin_selberg::Segment>,
        classes: Vec<lfclass::rankin_selberg::SupercuspidalClass>,
    }
    let build = |r: RawRep| {
        lfclass::rankin_selberg::GenericRepLocal::new(r.p, r.segments, r.classes)
            .map_err(|e| anyhow!("{e}"))
    };
    match serde_json::from_str::<OneOrPair>(&text)? {
        OneOrPair::One(r) => {
            let a = build(r)?;
            let b = a.contragredient();
            Ok((a, b))
        }
        OneOrPair::Pair(r1, r2) => Ok((build(r1)?, build(r2)?)),
    }
}
