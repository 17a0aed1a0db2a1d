//! Plain-text scenario configuration: flat `key = value` lines with
//! mandatory unit suffixes in key names. Parsing is total — every violation
//! in a document is reported with its line and column, not just the first —
//! and unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::constants::hz;
use crate::powder::{
    generate_orientations, OrientationScheme, OrientationSet, RfDistribution,
};
use crate::scenarios::{InitialPrep, Phase, RfInhomogeneity, RfProfile, ScenarioConfig};
use crate::solid::CrystalliteOrientation;
use crate::spin::{Species, SpinSystem, SpinSystemBuilder};

pub const KNOWN_KEYS: &[&str] = &[
    "phase",
    "spins",
    "shifts_hz",
    "j_hz",
    "dipolar_hz",
    "geometry_angstrom",
    "pair",
    "prep",
    "omega1_hz",
    "ramp_percent",
    "inhomogeneity_percent",
    "inhomogeneity_model",
    "tau_sl_s",
    "mas_hz",
    "delta_sign",
    "orientations",
    "seed",
    "out_grid",
    "i_offset_hz",
    "step_s",
];

/// Bare stems that hint at a forgotten unit suffix.
const UNITLESS_STEMS: &[(&str, &str)] = &[
    ("shifts", "shifts_hz"),
    ("j", "j_hz"),
    ("dipolar", "dipolar_hz"),
    ("geometry", "geometry_angstrom"),
    ("omega1", "omega1_hz"),
    ("tau_sl", "tau_sl_s"),
    ("mas", "mas_hz"),
    ("i_offset", "i_offset_hz"),
    ("step", "step_s"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

/// All violations found in a document.
#[derive(Debug, Error)]
pub struct ConfigError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "configuration is invalid:")?;
        for d in &self.diagnostics {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}

struct Entry {
    line: usize,
    column: usize,
    value: String,
}

struct Parser {
    entries: BTreeMap<String, Entry>,
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn err(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            line,
            column,
            message: message.into(),
        });
    }

    fn take(&mut self, key: &str) -> Option<(usize, usize, String)> {
        self.entries
            .remove(key)
            .map(|e| (e.line, e.column, e.value))
    }
}

fn lex(text: &str, parser: &mut Parser) {
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let without_comment = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if without_comment.trim().is_empty() {
            continue;
        }
        let Some(eq) = without_comment.find('=') else {
            parser.err(line, 1, "expected 'key = value'");
            continue;
        };
        let key = without_comment[..eq].trim().to_string();
        let value = without_comment[eq + 1..].trim().to_string();
        let col = without_comment.len() - without_comment.trim_start().len() + 1;
        if key.is_empty() {
            parser.err(line, col, "missing key before '='");
            continue;
        }
        if !KNOWN_KEYS.contains(&key.as_str()) {
            if let Some((_, fixed)) = UNITLESS_STEMS.iter().find(|(stem, _)| *stem == key) {
                parser.err(
                    line,
                    col,
                    format!("key {key:?} is missing its unit suffix; use {fixed:?}"),
                );
            } else {
                parser.err(line, col, format!("unknown key {key:?}"));
            }
            continue;
        }
        if let Some(previous) = parser.entries.get(&key) {
            let msg = format!(
                "duplicate key {key:?} (already set on line {})",
                previous.line
            );
            parser.err(line, col, msg);
            continue;
        }
        parser.entries.insert(
            key,
            Entry {
                line,
                column: col,
                value,
            },
        );
    }
}

fn parse_f64(parser: &mut Parser, key: &str) -> Option<(f64, usize)> {
    let (line, col, value) = parser.take(key)?;
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() => Some((v, line)),
        _ => {
            parser.err(line, col, format!("{key}: expected a finite number, got {value:?}"));
            None
        }
    }
}

struct SpinDecl {
    label: String,
    species: Species,
    gamma: Option<f64>,
}

fn parse_spins(parser: &mut Parser) -> Option<(Vec<SpinDecl>, usize)> {
    let (line, col, value) = match parser.take("spins") {
        Some(v) => v,
        None => {
            parser.err(0, 0, "spins required (e.g. spins = H1:S, H2:S, C:I)");
            return None;
        }
    };
    let mut decls = Vec::new();
    for item in value.split(',') {
        let parts: Vec<&str> = item.trim().split(':').collect();
        match parts.as_slice() {
            [label, role] => {
                let species = match role.trim() {
                    "S" => Species::AbundantS,
                    "I" => Species::RareI,
                    other => {
                        parser.err(
                            line,
                            col,
                            format!("spin {label:?}: role must be S or I, got {other:?}"),
                        );
                        continue;
                    }
                };
                decls.push(SpinDecl {
                    label: label.trim().to_string(),
                    species,
                    gamma: None,
                });
            }
            [label, role, gamma] => {
                let species = match role.trim() {
                    "S" => Species::AbundantS,
                    "I" => Species::RareI,
                    other => {
                        parser.err(line, col, format!("spin role must be S or I, got {other:?}"));
                        continue;
                    }
                };
                match gamma.trim().parse::<f64>() {
                    Ok(g) => decls.push(SpinDecl {
                        label: label.trim().to_string(),
                        species,
                        gamma: Some(g),
                    }),
                    Err(_) => parser.err(
                        line,
                        col,
                        format!("spin {label:?}: bad gyromagnetic ratio {gamma:?}"),
                    ),
                }
            }
            _ => parser.err(line, col, format!("bad spin declaration {item:?}")),
        }
    }
    if decls.is_empty() {
        parser.err(line, col, "spins: at least one spin required");
        return None;
    }
    Some((decls, line))
}

fn parse_label_map(parser: &mut Parser, key: &str) -> Vec<(String, f64, usize, usize)> {
    let mut out = Vec::new();
    if let Some((line, col, value)) = parser.take(key) {
        for item in value.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            match item.rsplit_once(':') {
                Some((label, num)) => match num.trim().parse::<f64>() {
                    Ok(v) => out.push((label.trim().to_string(), v, line, col)),
                    Err(_) => parser.err(line, col, format!("{key}: bad number in {item:?}")),
                },
                None => parser.err(line, col, format!("{key}: expected label:value in {item:?}")),
            }
        }
    }
    out
}

fn parse_pair_map(parser: &mut Parser, key: &str) -> Vec<(String, String, f64, usize, usize)> {
    let mut out = Vec::new();
    if let Some((line, col, value)) = parser.take(key) {
        for item in value.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let Some((pair, num)) = item.rsplit_once(':') else {
                parser.err(line, col, format!("{key}: expected A-B:value in {item:?}"));
                continue;
            };
            let Some((a, b)) = pair.split_once('-') else {
                parser.err(line, col, format!("{key}: expected A-B pair in {item:?}"));
                continue;
            };
            match num.trim().parse::<f64>() {
                Ok(v) => out.push((
                    a.trim().to_string(),
                    b.trim().to_string(),
                    v,
                    line,
                    col,
                )),
                Err(_) => parser.err(line, col, format!("{key}: bad number in {item:?}")),
            }
        }
    }
    out
}

fn parse_geometry(parser: &mut Parser) -> Vec<(String, [f64; 3], usize, usize)> {
    let mut out = Vec::new();
    if let Some((line, col, value)) = parser.take("geometry_angstrom") {
        for item in value.split(';') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let Some((label, coords)) = item.split_once(':') else {
                parser.err(line, col, format!("geometry_angstrom: expected label:x,y,z in {item:?}"));
                continue;
            };
            let nums: Vec<Result<f64, _>> =
                coords.split(',').map(|c| c.trim().parse::<f64>()).collect();
            if nums.len() != 3 || nums.iter().any(|n| n.is_err()) {
                parser.err(
                    line,
                    col,
                    format!("geometry_angstrom: expected three numbers for {label:?}"),
                );
                continue;
            }
            let xyz: Vec<f64> = nums.into_iter().map(|n| n.unwrap()).collect();
            out.push((
                label.trim().to_string(),
                [xyz[0], xyz[1], xyz[2]],
                line,
                col,
            ));
        }
    }
    out
}

fn parse_orientations(parser: &mut Parser, seed: u64) -> Option<OrientationSet> {
    let (line, col, value) = parser.take("orientations")?;
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    let bad = |parser: &mut Parser| {
        parser.err(
            line,
            col,
            format!(
                "orientations: expected fibonacci:NxM, random:N, or single:alpha,beta,gamma \
                 (degrees), got {value:?}"
            ),
        );
        None
    };
    match parts.as_slice() {
        ["fibonacci", counts] => {
            let Some((n, m)) = counts.split_once('x') else {
                return bad(parser);
            };
            match (n.trim().parse::<usize>(), m.trim().parse::<usize>()) {
                (Ok(n), Ok(m)) => {
                    match generate_orientations(OrientationScheme::FibonacciGamma, n, m, seed) {
                        Ok(set) => Some(set),
                        Err(e) => {
                            parser.err(line, col, format!("orientations: {e}"));
                            None
                        }
                    }
                }
                _ => bad(parser),
            }
        }
        ["random", count] => match count.parse::<usize>() {
            Ok(n) => match generate_orientations(OrientationScheme::UniformRandom, n, 1, seed) {
                Ok(set) => Some(set),
                Err(e) => {
                    parser.err(line, col, format!("orientations: {e}"));
                    None
                }
            },
            Err(_) => bad(parser),
        },
        ["single", angles] => {
            let nums: Vec<Result<f64, _>> =
                angles.split(',').map(|a| a.trim().parse::<f64>()).collect();
            if nums.len() != 3 || nums.iter().any(|n| n.is_err()) {
                return bad(parser);
            }
            let a: Vec<f64> = nums.into_iter().map(|n| n.unwrap()).collect();
            Some(OrientationSet::single(CrystalliteOrientation::from_degrees(
                a[0], a[1], a[2],
            )))
        }
        _ => bad(parser),
    }
}

/// Parse a configuration document into a validated [`ScenarioConfig`], or a
/// list of every violation found.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut parser = Parser {
        entries: BTreeMap::new(),
        diagnostics: Vec::new(),
    };
    lex(text, &mut parser);

    // phase
    let phase = match parser.take("phase") {
        Some((_, _, v)) if v == "liquid" => Some(Phase::Liquid),
        Some((_, _, v)) if v == "solid" => Some(Phase::Solid),
        Some((line, col, v)) => {
            parser.err(line, col, format!("phase must be liquid or solid, got {v:?}"));
            None
        }
        None => {
            parser.err(0, 0, "phase required");
            None
        }
    };

    // spin system
    let spins = parse_spins(&mut parser);
    let shifts = parse_label_map(&mut parser, "shifts_hz");
    let js = parse_pair_map(&mut parser, "j_hz");
    let dipolars = parse_pair_map(&mut parser, "dipolar_hz");
    let geometry = parse_geometry(&mut parser);

    let delta_sign_negative = match parser.take("delta_sign") {
        Some((_, _, v)) if v == "positive" => false,
        Some((_, _, v)) if v == "negative" => true,
        Some((line, col, v)) => {
            parser.err(line, col, format!("delta_sign must be positive or negative, got {v:?}"));
            false
        }
        None => false,
    };

    let pair_labels = parser
        .take("pair")
        .and_then(|(line, col, v)| match v.split_once(',') {
            Some((a, b)) => Some((a.trim().to_string(), b.trim().to_string())),
            None => {
                parser.err(line, col, "pair: expected two labels, e.g. pair = H1,H2");
                None
            }
        });

    let prep_raw = parser.take("prep");
    let omega1 = parse_f64(&mut parser, "omega1_hz");
    let ramp_percent = parse_f64(&mut parser, "ramp_percent").map(|(v, _)| v);
    let inhom_percent = parse_f64(&mut parser, "inhomogeneity_percent").map(|(v, _)| v);
    let inhom_model = match parser.take("inhomogeneity_model") {
        Some((_, _, v)) if v == "gaussian" => RfDistribution::Gaussian,
        Some((_, _, v)) if v == "uniform" => RfDistribution::Uniform,
        Some((line, col, v)) => {
            parser.err(
                line,
                col,
                format!("inhomogeneity_model must be gaussian or uniform, got {v:?}"),
            );
            RfDistribution::Gaussian
        }
        None => RfDistribution::Gaussian,
    };
    let tau_sl = parse_f64(&mut parser, "tau_sl_s");
    let mas = parse_f64(&mut parser, "mas_hz");
    let i_offset = parse_f64(&mut parser, "i_offset_hz").map(|(v, _)| v).unwrap_or(0.0);
    let step_s = parse_f64(&mut parser, "step_s").map(|(v, _)| v);
    let seed = match parser.take("seed") {
        Some((line, col, v)) => match v.parse::<u64>() {
            Ok(s) => s,
            Err(_) => {
                parser.err(line, col, format!("seed: expected a non-negative integer, got {v:?}"));
                0
            }
        },
        None => 0,
    };
    let out_points = match parser.take("out_grid") {
        Some((line, col, v)) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => {
                parser.err(line, col, format!("out_grid: expected a point count >= 1, got {v:?}"));
                400
            }
        },
        None => 400,
    };
    let orientations = parse_orientations(&mut parser, seed);

    // anything left over was recognized but unused by this phase combination
    let leftover: Vec<String> = parser.entries.keys().cloned().collect();
    for key in leftover {
        let e = &parser.entries[&key];
        let (line, col) = (e.line, e.column);
        parser.err(line, col, format!("internal: key {key:?} was not consumed"));
    }

    // build the spin system
    let mut system: Option<SpinSystem> = None;
    if let Some((decls, line)) = &spins {
        let mut builder = SpinSystemBuilder::default();
        for d in decls {
            let gamma = d.gamma.unwrap_or(match d.species {
                Species::AbundantS => crate::constants::GAMMA_1H,
                Species::RareI => crate::constants::GAMMA_13C,
            });
            builder = builder.spin(&d.label, d.species, gamma);
        }
        for (label, v, _, _) in &shifts {
            builder = builder.shift_hz(label, *v);
        }
        for (a, b, v, _, _) in &js {
            builder = builder.j_hz(a, b, *v);
        }
        for (a, b, v, _, _) in &dipolars {
            builder = builder.dipolar_hz(a, b, *v);
        }
        for (label, xyz, _, _) in &geometry {
            builder = builder.position(label, *xyz);
        }
        match builder.build() {
            Ok(sys) => system = Some(sys),
            Err(e) => parser.err(*line, 1, format!("spin system: {e}")),
        }
    }

    let mut config = None;
    if let (Some(phase), Some(mut system)) = (phase, system) {
        let i_spin = match system.single_rare() {
            Some(i) => i,
            None => {
                parser.err(0, 0, "exactly one rare-I spin required");
                0
            }
        };
        let abundant = system.abundant_indices();
        let (s1, s2) = match &pair_labels {
            Some((a, b)) => {
                let ia = system.index_of(a);
                let ib = system.index_of(b);
                match (ia, ib) {
                    (Some(ia), Some(ib)) => (ia, ib),
                    _ => {
                        parser.err(0, 0, format!("pair: unknown label in ({a}, {b})"));
                        (0, 0)
                    }
                }
            }
            None => {
                if abundant.len() >= 2 {
                    (abundant[0], abundant[1])
                } else {
                    parser.err(0, 0, "need at least two abundant spins for the transfer pair");
                    (0, 0)
                }
            }
        };
        // delta_sign = negative mirrors the designated-pair shifts, modeling
        // the experiment with the shift assignments swapped
        if delta_sign_negative {
            system = mirror_pair_shifts(system, s1, s2);
        }
        let prep = match prep_raw {
            None => InitialPrep::AntiLongitudinal { sign: 1.0 },
            Some((line, col, v)) => parse_prep(&mut parser, &system, line, col, &v),
        };
        let rf = match ramp_percent {
            None | Some(0.0) => RfProfile::Constant,
            Some(p) => RfProfile::LinearRamp { span: p / 100.0 },
        };
        let inhomogeneity = match inhom_percent {
            None | Some(0.0) => None,
            Some(p) => Some(RfInhomogeneity {
                fraction: p / 100.0,
                model: inhom_model,
            }),
        };
        if omega1.is_none() {
            parser.err(0, 0, "omega1_hz required");
        }
        if tau_sl.is_none() {
            parser.err(0, 0, "tau_sl_s required");
        }
        config = Some(ScenarioConfig {
            phase,
            system,
            s1,
            s2,
            i_spin,
            prep,
            rf,
            omega1: hz(omega1.map(|(v, _)| v).unwrap_or(0.0)),
            inhomogeneity,
            tau_sl: tau_sl.map(|(v, _)| v).unwrap_or(0.0),
            omega_r: mas.map(|(v, _)| hz(v)),
            orientations,
            i_offset: hz(i_offset),
            out_points,
            step_override: step_s,
            seed,
        });
    }

    match config {
        Some(c) if parser.diagnostics.is_empty() => {
            if let Err(e) = c.validate() {
                parser.err(0, 0, e.to_string());
                Err(ConfigError {
                    diagnostics: parser.diagnostics,
                })
            } else {
                Ok(c)
            }
        }
        _ => Err(ConfigError {
            diagnostics: parser.diagnostics,
        }),
    }
}

fn parse_prep(
    parser: &mut Parser,
    system: &SpinSystem,
    line: usize,
    col: usize,
    value: &str,
) -> InitialPrep {
    match value {
        "anti+" => InitialPrep::AntiLongitudinal { sign: 1.0 },
        "anti-" => InitialPrep::AntiLongitudinal { sign: -1.0 },
        "spinlock" => InitialPrep::ISpinLock,
        list => {
            let mut entries = Vec::new();
            for item in list.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let Some((label, num)) = item.rsplit_once(':') else {
                    parser.err(
                        line,
                        col,
                        format!("prep: expected anti+/anti-/spinlock or label:p list, got {item:?}"),
                    );
                    continue;
                };
                let Some(idx) = system.index_of(label.trim()) else {
                    parser.err(line, col, format!("prep: unknown spin label {label:?}"));
                    continue;
                };
                match num.trim().parse::<f64>() {
                    Ok(p) => entries.push((idx, p)),
                    Err(_) => parser.err(line, col, format!("prep: bad polarization {num:?}")),
                }
            }
            InitialPrep::Custom(entries)
        }
    }
}

/// Swap the shift values of the designated pair, keeping every coupling
/// attached to its spin.
fn mirror_pair_shifts(system: SpinSystem, s1: usize, s2: usize) -> SpinSystem {
    let mut builder = SpinSystemBuilder::default();
    for (i, spin) in system.spins().iter().enumerate() {
        builder = builder.spin(&spin.label, spin.species, spin.gamma);
        if let Some(p) = system.position(i) {
            builder = builder.position(&spin.label, p);
        }
    }
    for (i, spin) in system.spins().iter().enumerate() {
        let source = if i == s1 {
            s2
        } else if i == s2 {
            s1
        } else {
            i
        };
        builder = builder.shift_hz(&spin.label, system.shift(source) / crate::constants::TAU);
    }
    for (a, b, j) in system.j_pairs() {
        builder = builder.j_hz(
            &system.spin(a).label,
            &system.spin(b).label,
            j / crate::constants::TAU,
        );
    }
    for (a, b, bc) in system.dipolar_pairs() {
        // geometry-derived constants regenerate automatically; only explicit
        // entries need copying, and re-adding derived values is harmless
        builder = builder.dipolar_hz(
            &system.spin(a).label,
            &system.spin(b).label,
            bc / crate::constants::TAU,
        );
    }
    builder.build().expect("mirroring preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::to_hz;
    use approx::assert_relative_eq;

    const FIG2A: &str = "\
phase = liquid
spins = H1:S, H2:S, C:I
shifts_hz = H1:75, H2:-75
j_hz = H1-H2:8.5, H1-C:172, H2-C:8
omega1_hz = 127.8
tau_sl_s = 0.135
out_grid = 600
";

    #[test]
    fn parses_reference_liquid_document() {
        let config = parse_config(FIG2A).unwrap();
        assert_eq!(config.phase, Phase::Liquid);
        assert_eq!(config.system.n_spins(), 3);
        assert_relative_eq!(to_hz(config.delta()), 150.0, epsilon = 1e-9);
        assert_relative_eq!(to_hz(config.omega1), 127.8, epsilon = 1e-9);
        assert_relative_eq!(to_hz(config.system.j_coupling(0, 2)), 172.0, epsilon = 1e-9);
        assert_eq!(config.out_points, 600);
        assert_eq!(config.prep, InitialPrep::AntiLongitudinal { sign: 1.0 });
    }

    #[test]
    fn empty_document_reports_phase_required() {
        let err = parse_config("").unwrap_err();
        assert!(
            err.diagnostics.iter().any(|d| d.message.contains("phase required")),
            "{err}"
        );
    }

    #[test]
    fn duplicate_key_names_both_lines() {
        let text = "phase = liquid\nphase = solid\n";
        let err = parse_config(text).unwrap_err();
        let dup = err
            .diagnostics
            .iter()
            .find(|d| d.message.contains("duplicate key"))
            .expect("duplicate diagnostic");
        assert_eq!(dup.line, 2);
        assert!(dup.message.contains("line 1"), "{}", dup.message);
    }

    #[test]
    fn unitless_key_gets_targeted_diagnostic() {
        let text = "phase = liquid\nspins = H1:S, H2:S, C:I\nshifts = H1:75\nomega1_hz = 100\ntau_sl_s = 0.1\n";
        let err = parse_config(text).unwrap_err();
        assert!(
            err.diagnostics
                .iter()
                .any(|d| d.message.contains("shifts_hz")),
            "{err}"
        );
    }

    #[test]
    fn collects_multiple_violations() {
        let text = "spins = H1:S\nbogus = 1\nomega1_hz = not_a_number\n";
        let err = parse_config(text).unwrap_err();
        assert!(err.diagnostics.len() >= 3, "{err}");
    }

    #[test]
    fn solid_document_round_trip() {
        let text = "\
phase = solid
spins = H1:S, H2:S, C:I
shifts_hz = H1:500, H2:-500
geometry_angstrom = H1: 0,0,2.2; H2: 0,0,0; C: 1.1,0,0
omega1_hz = 1000
tau_sl_s = 0.004
mas_hz = 40000
orientations = fibonacci:5x2
seed = 7
";
        let config = parse_config(text).unwrap();
        assert_eq!(config.phase, Phase::Solid);
        assert_relative_eq!(to_hz(config.omega_r.unwrap()), 40000.0, epsilon = 1e-9);
        assert_eq!(config.orientations.as_ref().unwrap().len(), 10);
        let b = config.system.dipolar_constant(1, 2);
        assert_relative_eq!(to_hz(b), -22.7e3, max_relative = 2e-3);
    }

    #[test]
    fn delta_sign_negative_mirrors_pair_shifts() {
        let text = "\
phase = liquid
spins = H1:S, H2:S, C:I
shifts_hz = H1:75, H2:-75
j_hz = H1-H2:8.5, H1-C:172, H2-C:8
omega1_hz = 127.8
tau_sl_s = 0.1
delta_sign = negative
";
        let config = parse_config(text).unwrap();
        assert_relative_eq!(to_hz(config.delta()), -150.0, epsilon = 1e-9);
        // couplings stay attached to their spins
        assert_relative_eq!(to_hz(config.system.j_coupling(0, 2)), 172.0, epsilon = 1e-9);
    }

    #[test]
    fn custom_prep_by_label() {
        let text = "\
phase = liquid
spins = H1:S, H2:S, C:I
shifts_hz = H1:75, H2:-75
j_hz = H1-H2:8.5, H1-C:172, H2-C:8
prep = H1:1, H2:-1
omega1_hz = 127.8
tau_sl_s = 0.1
";
        let config = parse_config(text).unwrap();
        assert_eq!(config.prep, InitialPrep::Custom(vec![(0, 1.0), (1, -1.0)]));
    }
}
