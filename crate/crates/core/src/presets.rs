//! Scenario presets for the reference parameter sets, and the dataset-bundle
//! emitter that redraws each study's simulation curves as CSV files plus a
//! plain-text manifest.
//!
//! Liquid parameters come from the published parameter tables; solid
//! geometries marked "assumed" fill gaps the sources leave open (coupling
//! networks given only qualitatively) and keep those studies reproducible in
//! a documented, qualitative sense.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::constants::hz;
use crate::csvio::{self, CsvError};
use crate::liquid::{self, LiquidParams};
use crate::powder::{generate_orientations, OrientationScheme, OrientationSet, RfDistribution};
use crate::scenarios::{
    compare_aht_vs_brute, run_buildup, scan_offset, scan_rf, ComparisonOutcome, InitialPrep,
    Phase, RfInhomogeneity, RfProfile, ScenarioConfig, ScenarioError,
};
use crate::solid::CrystalliteOrientation;
use crate::spin::SpinSystem;

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown dataset id {0:?} (known: fig2, fig3, fig4, fig5, s1, s2, s4)")]
    UnknownId(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error("i/o failure on {0}: {1}")]
    Io(String, #[source] std::io::Error),
}

/// Identifiers of the shipped dataset presets.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    S1,
    S2,
    S4,
}

impl FromStr for FigureId {
    type Err = PresetError;
    fn from_str(s: &str) -> Result<Self, PresetError> {
        match s.to_ascii_lowercase().as_str() {
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "fig4" => Ok(Self::Fig4),
            "fig5" => Ok(Self::Fig5),
            "s1" => Ok(Self::S1),
            "s2" => Ok(Self::S2),
            "s4" => Ok(Self::S4),
            other => Err(PresetError::UnknownId(other.to_string())),
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
            Self::S1 => "s1",
            Self::S2 => "s2",
            Self::S4 => "s4",
        };
        f.write_str(s)
    }
}

pub const ALL_FIGURES: [FigureId; 7] = [
    FigureId::Fig2,
    FigureId::Fig3,
    FigureId::Fig4,
    FigureId::Fig5,
    FigureId::S1,
    FigureId::S2,
    FigureId::S4,
];

fn base_config(system: SpinSystem, phase: Phase) -> ScenarioConfig {
    let i_spin = system.single_rare().expect("preset has one rare spin");
    ScenarioConfig {
        phase,
        system,
        s1: 0,
        s2: 1,
        i_spin,
        prep: InitialPrep::AntiLongitudinal { sign: 1.0 },
        rf: RfProfile::Constant,
        omega1: 0.0,
        inhomogeneity: None,
        tau_sl: 0.0,
        omega_r: None,
        orientations: None,
        i_offset: 0.0,
        out_points: 400,
        step_override: None,
        seed: 0,
    }
}

/// Three-spin H1-H2-C system with J(H1,H2) = 8.5 Hz, J(H1,C) = 172 Hz,
/// J(H2,C) = 8 Hz, symmetric shifts of the given difference.
pub fn fig2_system(delta_hz: f64) -> SpinSystem {
    SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .carbon13("C")
        .shift_hz("H1", delta_hz / 2.0)
        .shift_hz("H2", -delta_hz / 2.0)
        .j_hz("H1", "H2", 8.5)
        .j_hz("H1", "C", 172.0)
        .j_hz("H2", "C", 8.0)
        .build()
        .expect("valid preset system")
}

pub const FIG2_DELTAS_HZ: [f64; 3] = [150.0, 300.0, 450.0];

/// Matched forward buildup at one of the shift differences 150/300/450 Hz;
/// the RF sits at the closed-form matching value and the window covers 1.25
/// transfer half-periods.
pub fn fig2_config(delta_hz: f64) -> ScenarioConfig {
    let system = fig2_system(delta_hz);
    let params = LiquidParams {
        system: &system,
        i_spin: 2,
        s1: 0,
        s2: 1,
        omega1: 0.0,
        i_offset: 0.0,
    };
    let aht = liquid::liquid_aht_coefficients(&params).expect("preset delta is positive");
    let tau = 1.25 * std::f64::consts::PI / aht.c;
    let mut c = base_config(system, Phase::Liquid);
    c.omega1 = aht.omega1_opt;
    c.tau_sl = tau;
    c.out_points = 600;
    c
}

/// Inverse transfer: H1-H2-C with a 350 Hz shift difference, J(H1,C) = 172
/// Hz, J(H2,C) = 4 Hz, J(H1,H2) = 8 Hz, RF at 340 Hz, starting from the
/// spin-locked rare spin.
pub fn fig3_config() -> ScenarioConfig {
    let system = SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .carbon13("C")
        .shift_hz("H1", 175.0)
        .shift_hz("H2", -175.0)
        .j_hz("H1", "H2", 8.0)
        .j_hz("H1", "C", 172.0)
        .j_hz("H2", "C", 4.0)
        .build()
        .expect("valid preset system");
    let mut c = base_config(system, Phase::Liquid);
    c.prep = InitialPrep::ISpinLock;
    c.omega1 = hz(340.0);
    c.tau_sl = 0.26;
    c.out_points = 1300;
    c
}

/// L-shaped H1-H2-C solid: r(H1,H2) = 2.2 A, r(H2,C) = 1.1 A with a right
/// angle at H2; shift difference 1 kHz, MAS at 40 kHz, RF matched at 1 kHz.
pub fn fig4_system() -> SpinSystem {
    SpinSystem::builder()
        .proton("H1")
        .at([0.0, 0.0, 2.2])
        .proton("H2")
        .at([0.0, 0.0, 0.0])
        .carbon13("C")
        .at([1.1, 0.0, 0.0])
        .shift_hz("H1", 500.0)
        .shift_hz("H2", -500.0)
        .build()
        .expect("valid preset system")
}

/// Representative crystallite orientations for the single-crystallite
/// comparisons (chosen; the sources label theirs only in the figure).
pub fn fig4_orientations() -> Vec<CrystalliteOrientation> {
    vec![
        CrystalliteOrientation::from_degrees(10.0, 45.0, 80.0),
        CrystalliteOrientation::from_degrees(70.0, 20.0, 50.0),
        CrystalliteOrientation::from_degrees(45.0, 75.0, 15.0),
        CrystalliteOrientation::from_degrees(35.0, 25.0, 75.0),
    ]
}

pub fn fig4_config(orientations: OrientationSet, tau_sl: f64) -> ScenarioConfig {
    let mut c = base_config(fig4_system(), Phase::Solid);
    c.omega1 = hz(1000.0);
    c.tau_sl = tau_sl;
    c.omega_r = Some(hz(40_000.0));
    c.orientations = Some(orientations);
    c.out_points = 320;
    c
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldPreset {
    /// Proton resonance 600 MHz: shifts as listed.
    Mhz600,
    /// Proton resonance 300 MHz: all shift differences halved.
    Mhz300,
}

impl FieldPreset {
    fn shift_scale(self) -> f64 {
        match self {
            FieldPreset::Mhz600 => 1.0,
            FieldPreset::Mhz300 => 0.5,
        }
    }
}

/// Five protons and one carbon for the multi-spin MAS study. Shifts at 600
/// MHz relative to proton 1: 0, 126, 1008, 2538, 2538 Hz; the carbon sits in
/// a CH2 group with protons 1 and 2, and protons 3-5 carry homonuclear
/// couplings of a few kHz. The geometry realizing those couplings is an
/// assumption of this preset.
pub fn fig5_system(field: FieldPreset) -> SpinSystem {
    let scale = field.shift_scale();
    SpinSystem::builder()
        .proton("H1")
        .at([0.63, 0.89, 0.0])
        .proton("H2")
        .at([0.63, -0.89, 0.0])
        .proton("H3")
        .at([2.4, 0.0, 1.3])
        .proton("H4")
        .at([2.8, 2.2, -0.9])
        .proton("H5")
        .at([2.9, -1.6, -1.2])
        .carbon13("C")
        .at([0.0, 0.0, 0.0])
        .shift_hz("H2", 126.0 * scale)
        .shift_hz("H3", 1008.0 * scale)
        .shift_hz("H4", 2538.0 * scale)
        .shift_hz("H5", 2538.0 * scale)
        .build()
        .expect("valid preset system")
}

pub const FIG5_MAS_RATES_HZ: [f64; 3] = [20_000.0, 40_000.0, 80_000.0];

/// Down-scaled powder used by the multi-spin studies: large enough for the
/// asserted trends, small enough for a desk run.
pub fn fig5_powder() -> OrientationSet {
    generate_orientations(OrientationScheme::FibonacciGamma, 8, 2, 0).expect("nonzero counts")
}

/// Anti-longitudinal preparation -H1 -H2 +H3 +H4 +H5 with the carbon
/// detected; the designated pair (H4, H1) carries the nominal shift
/// difference of 2.5 kHz (1.25 kHz at the lower field).
pub fn fig5_config(field: FieldPreset, mas_hz: f64, powder: OrientationSet) -> ScenarioConfig {
    let mut c = base_config(fig5_system(field), Phase::Solid);
    c.s1 = 3;
    c.s2 = 0;
    c.prep = InitialPrep::Custom(vec![(0, -1.0), (1, -1.0), (2, 1.0), (3, 1.0), (4, 1.0)]);
    c.omega1 = hz(2500.0 * field.shift_scale());
    c.tau_sl = 20.0e-3;
    c.omega_r = Some(hz(mas_hz));
    c.orientations = Some(powder);
    c.out_points = 200;
    c
}

/// Four-spin liquid CH2H3-CH1 system: J(H1,H2) = 7 Hz, J(H1,H3) = 4 Hz,
/// J(C,H1) = 170 Hz, J(C,H2) = J(C,H3) = 8 Hz; shift of H1 above the
/// overlapping H2/H3 pair by 400 Hz (600 MHz) or 200 Hz (300 MHz).
pub fn s1_system(field: FieldPreset) -> SpinSystem {
    let delta = match field {
        FieldPreset::Mhz600 => 400.0,
        FieldPreset::Mhz300 => 200.0,
    };
    SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .proton("H3")
        .carbon13("C")
        .shift_hz("H1", delta)
        .j_hz("H1", "H2", 7.0)
        .j_hz("H1", "H3", 4.0)
        .j_hz("H1", "C", 170.0)
        .j_hz("H2", "C", 8.0)
        .j_hz("H3", "C", 8.0)
        .build()
        .expect("valid preset system")
}

/// Buildup with the inverted resonance on the H2/H3 side, RF at the
/// designated-pair matching value.
pub fn s1_config(field: FieldPreset) -> ScenarioConfig {
    let system = s1_system(field);
    let params = LiquidParams {
        system: &system,
        i_spin: 3,
        s1: 0,
        s2: 1,
        omega1: 0.0,
        i_offset: 0.0,
    };
    let aht = liquid::liquid_aht_coefficients(&params).expect("positive delta");
    let mut c = base_config(system, Phase::Liquid);
    c.prep = InitialPrep::Custom(vec![(0, 1.0), (1, -1.0), (2, -1.0)]);
    c.omega1 = aht.omega1_opt;
    c.tau_sl = 1.25 * std::f64::consts::PI / aht.c;
    c
}

/// Five-spin liquid system with two equivalent proton pairs (1,1') and
/// (2,2'): shift difference 284 Hz, J(H1,H2) = J(H1',H2') = 8.5 Hz,
/// J(H1,H1') = J(H2,H2') = 2.5 Hz, J(H1,C) = 172 Hz, J(H2,C) = 7 Hz.
pub fn s2_system(delta_hz: f64) -> SpinSystem {
    SpinSystem::builder()
        .proton("H1")
        .proton("H2")
        .proton("H1p")
        .proton("H2p")
        .carbon13("C")
        .shift_hz("H1", delta_hz / 2.0)
        .shift_hz("H2", -delta_hz / 2.0)
        .shift_hz("H1p", delta_hz / 2.0)
        .shift_hz("H2p", -delta_hz / 2.0)
        .j_hz("H1", "H2", 8.5)
        .j_hz("H1p", "H2p", 8.5)
        .j_hz("H1", "H1p", 2.5)
        .j_hz("H2", "H2p", 2.5)
        .j_hz("H1", "C", 172.0)
        .j_hz("H2", "C", 7.0)
        .build()
        .expect("valid preset system")
}

/// Multi-spin transfer with the (2,2') pair inverted, RF at 266 Hz.
pub fn s2_config() -> ScenarioConfig {
    let mut c = base_config(s2_system(284.0), Phase::Liquid);
    c.prep = InitialPrep::Custom(vec![(0, 1.0), (1, -1.0), (2, 1.0), (3, -1.0)]);
    c.omega1 = hz(266.0);
    c.tau_sl = 0.6;
    c.out_points = 360;
    c
}

/// The 300 MHz variant with halved shift difference (142 Hz) and the RF at
/// the designated-pair matching value.
pub fn s4_config() -> ScenarioConfig {
    let system = s2_system(142.0);
    let params = LiquidParams {
        system: &system,
        i_spin: 4,
        s1: 0,
        s2: 1,
        omega1: 0.0,
        i_offset: 0.0,
    };
    let aht = liquid::liquid_aht_coefficients(&params).expect("positive delta");
    let mut c = base_config(system, Phase::Liquid);
    c.prep = InitialPrep::Custom(vec![(0, 1.0), (1, -1.0), (2, 1.0), (3, -1.0)]);
    c.omega1 = aht.omega1_opt;
    c.tau_sl = 0.9;
    c.out_points = 360;
    c
}

/// Glycine-like two-site solid: a CH2-like proton bonded to the carbon and
/// an NH3-like proton 3 kHz away in shift. Assumed geometry.
pub fn glycine_like_system() -> SpinSystem {
    SpinSystem::builder()
        .proton("Hc")
        .at([1.1, 0.0, 0.0])
        .proton("Hn")
        .at([1.8, 1.9, 0.8])
        .carbon13("C")
        .at([0.0, 0.0, 0.0])
        .shift_hz("Hc", -1500.0)
        .shift_hz("Hn", 1500.0)
        .build()
        .expect("valid preset system")
}

/// Inversion of one proton site at 40 kHz MAS; `invert_bonded` selects which
/// site starts inverted, flipping the sign of the transferred signal.
pub fn glycine_like_config(invert_bonded: bool) -> ScenarioConfig {
    let mut c = base_config(glycine_like_system(), Phase::Solid);
    c.s1 = 1; // higher-shift site first so the pair difference is positive
    c.s2 = 0;
    c.prep = if invert_bonded {
        InitialPrep::Custom(vec![(0, -1.0), (1, 1.0)])
    } else {
        InitialPrep::Custom(vec![(0, 1.0), (1, -1.0)])
    };
    c.omega1 = hz(3000.0);
    c.tau_sl = 3.0e-3;
    c.omega_r = Some(hz(40_000.0));
    c.orientations =
        Some(generate_orientations(OrientationScheme::FibonacciGamma, 6, 2, 0).unwrap());
    c.out_points = 200;
    c
}

/// Files written by [`reproduce_figure`], with one description per file.
pub struct Manifest {
    pub dir: PathBuf,
    pub entries: Vec<(String, String)>,
}

impl Manifest {
    fn push(&mut self, file: impl Into<String>, description: impl Into<String>) {
        self.entries.push((file.into(), description.into()));
    }

    fn write(&self) -> Result<(), PresetError> {
        let mut text = String::from("file\tdescription\n");
        for (f, d) in &self.entries {
            text.push_str(&format!("{f}\t{d}\n"));
        }
        let path = self.dir.join("manifest.txt");
        std::fs::write(&path, text).map_err(|e| PresetError::Io(path.display().to_string(), e))
    }
}

fn series_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.csv"))
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

/// Emit every series/profile needed to redraw the simulation curves of the
/// identified dataset into `out_dir/<id>/`, together with a manifest.
pub fn reproduce_figure(id: FigureId, out_dir: &Path) -> Result<Manifest, PresetError> {
    let dir = out_dir.join(id.to_string());
    std::fs::create_dir_all(&dir).map_err(|e| PresetError::Io(dir.display().to_string(), e))?;
    let mut manifest = Manifest {
        dir: dir.clone(),
        entries: Vec::new(),
    };
    match id {
        FigureId::Fig2 => reproduce_fig2(&dir, &mut manifest)?,
        FigureId::Fig3 => reproduce_fig3(&dir, &mut manifest)?,
        FigureId::Fig4 => reproduce_fig4(&dir, &mut manifest)?,
        FigureId::Fig5 => reproduce_fig5(&dir, &mut manifest)?,
        FigureId::S1 => reproduce_s1(&dir, &mut manifest)?,
        FigureId::S2 => reproduce_s2(&dir, &mut manifest)?,
        FigureId::S4 => reproduce_s4(&dir, &mut manifest)?,
    }
    manifest.write()?;
    Ok(manifest)
}

fn reproduce_fig2(dir: &Path, manifest: &mut Manifest) -> Result<(), PresetError> {
    for delta in FIG2_DELTAS_HZ {
        let tag = format!("delta{delta:.0}");
        let config = fig2_config(delta);
        // matched buildup with the analytic overlay
        let report = compare_aht_vs_brute(&config)?;
        let name = format!("buildup_{tag}");
        csvio::write_series(&report.brute, &series_path(dir, &name))?;
        manifest.push(
            format!("{name}.csv"),
            format!("brute-force matched buildup, shift difference {delta} Hz"),
        );
        if let Some(analytic) = &report.analytic {
            let name = format!("buildup_{tag}_analytic");
            csvio::write_series(analytic, &series_path(dir, &name))?;
            manifest.push(
                format!("{name}.csv"),
                "closed-form trajectory on the same grid".to_string(),
            );
        }
        // RF matching profile
        let center = config.omega1;
        let grid = linspace(center - hz(40.0), center + hz(40.0), 81);
        let profile = scan_rf(&config, &grid)?;
        let name = format!("scan_rf_{tag}");
        csvio::write_profile(&profile, "omega1_hz", &series_path(dir, &name))?;
        manifest.push(
            format!("{name}.csv"),
            format!("RF matching profile around the optimum, shift difference {delta} Hz"),
        );
        // inhomogeneity studies: constant 5%, ramped 5% (and 10% at 450 Hz)
        let mut spans = vec![0.05];
        if delta == 450.0 {
            spans.push(0.10);
        }
        let mut inh = config.clone();
        inh.inhomogeneity = Some(RfInhomogeneity {
            fraction: 0.05,
            model: RfDistribution::Gaussian,
        });
        let ts = run_buildup(&inh)?;
        let name = format!("buildup_{tag}_inhom5_cw");
        csvio::write_series(&ts, &series_path(dir, &name))?;
        manifest.push(
            format!("{name}.csv"),
            "5% RF inhomogeneity, constant RF".to_string(),
        );
        for span in spans {
            let mut ramped = inh.clone();
            ramped.rf = RfProfile::LinearRamp { span };
            let ts = run_buildup(&ramped)?;
            let name = format!("buildup_{tag}_inhom5_ramp{:.0}", span * 100.0);
            csvio::write_series(&ts, &series_path(dir, &name))?;
            manifest.push(
                format!("{name}.csv"),
                format!("5% RF inhomogeneity, {:.0}% linear ramp", span * 100.0),
            );
        }
    }
    Ok(())
}

fn reproduce_fig3(dir: &Path, manifest: &mut Manifest) -> Result<(), PresetError> {
    let ts = run_buildup(&fig3_config())?;
    csvio::write_series(&ts, &series_path(dir, "inverse_buildup"))?;
    manifest.push(
        "inverse_buildup.csv",
        "anti-longitudinal state created from the spin-locked rare spin",
    );
    Ok(())
}

fn reproduce_fig4(dir: &Path, manifest: &mut Manifest) -> Result<(), PresetError> {
    for (k, orientation) in fig4_orientations().into_iter().enumerate() {
        let config = fig4_config(OrientationSet::single(orientation), 25.0e-3);
        let report = compare_aht_vs_brute(&config)?;
        let name = format!("crystallite{k}");
        csvio::write_series(&report.brute, &series_path(dir, &name))?;
        manifest.push(
            format!("{name}.csv"),
            format!(
                "brute force at Euler angles ({:.0}, {:.0}, {:.0}) deg",
                orientation.alpha.to_degrees(),
                orientation.beta.to_degrees(),
                orientation.gamma.to_degrees()
            ),
        );
        if let Some(analytic) = &report.analytic {
            let name = format!("crystallite{k}_analytic");
            csvio::write_series(analytic, &series_path(dir, &name))?;
            manifest.push(format!("{name}.csv"), "effective-rotation trajectory");
        }
    }
    Ok(())
}

fn reproduce_fig5(dir: &Path, manifest: &mut Manifest) -> Result<(), PresetError> {
    for field in [FieldPreset::Mhz600, FieldPreset::Mhz300] {
        let ftag = match field {
            FieldPreset::Mhz600 => "600",
            FieldPreset::Mhz300 => "300",
        };
        let scale = field.shift_scale();
        for mas in FIG5_MAS_RATES_HZ {
            let config = fig5_config(field, mas, fig5_powder());
            let ts = run_buildup(&config)?;
            let name = format!("buildup_{ftag}_mas{:.0}k", mas / 1000.0);
            csvio::write_series(&ts, &series_path(dir, &name))?;
            manifest.push(
                format!("{name}.csv"),
                format!("matched buildup, {ftag} MHz shifts, MAS {:.0} kHz", mas / 1000.0),
            );
            let grid = linspace(hz(400.0 * scale), hz(3400.0 * scale), 16);
            let profile = scan_rf(&config, &grid)?;
            let name = format!("scan_rf_{ftag}_mas{:.0}k", mas / 1000.0);
            csvio::write_profile(&profile, "omega1_hz", &series_path(dir, &name))?;
            manifest.push(
                format!("{name}.csv"),
                format!("RF dependence, {ftag} MHz shifts, MAS {:.0} kHz", mas / 1000.0),
            );
        }
        // offset dependence at 40 kHz MAS
        let config = fig5_config(field, 40_000.0, fig5_powder());
        let offsets = linspace(hz(-12_000.0), hz(12_000.0), 13);
        let profile = scan_offset(&config, &offsets)?;
        let name = format!("scan_offset_{ftag}_mas40k");
        csvio::write_profile(&profile, "i_offset_hz", &series_path(dir, &name))?;
        manifest.push(
            format!("{name}.csv"),
            format!("rare-spin offset dependence, {ftag} MHz shifts, MAS 40 kHz"),
        );
    }
    Ok(())
}

fn liquid_inhomogeneity_variants(
    dir: &Path,
    manifest: &mut Manifest,
    base: &ScenarioConfig,
    tag: &str,
    ramp_span: f64,
) -> Result<(), PresetError> {
    let ts = run_buildup(base)?;
    let name = format!("buildup_{tag}_cw");
    csvio::write_series(&ts, &series_path(dir, &name))?;
    manifest.push(format!("{name}.csv"), "constant RF, homogeneous");
    let mut inh = base.clone();
    inh.inhomogeneity = Some(RfInhomogeneity {
        fraction: 0.05,
        model: RfDistribution::Gaussian,
    });
    let ts = run_buildup(&inh)?;
    let name = format!("buildup_{tag}_inhom5_cw");
    csvio::write_series(&ts, &series_path(dir, &name))?;
    manifest.push(format!("{name}.csv"), "constant RF, 5% inhomogeneity");
    let mut ramped = inh.clone();
    ramped.rf = RfProfile::LinearRamp { span: ramp_span };
    let ts = run_buildup(&ramped)?;
    let name = format!(
        "buildup_{tag}_inhom5_ramp{:.0}",
        ramp_span * 100.0
    );
    csvio::write_series(&ts, &series_path(dir, &name))?;
    manifest.push(
        format!("{name}.csv"),
        format!("{:.0}% linear ramp, 5% inhomogeneity", ramp_span * 100.0),
    );
    Ok(())
}

fn reproduce_s1(dir: &Path, manifest: &mut Manifest) -> Result<(), PresetError> {
    for field in [FieldPreset::Mhz300, FieldPreset::Mhz600] {
        let tag = match field {
            FieldPreset::Mhz600 => "600",
            FieldPreset::Mhz300 => "300",
        };
        liquid_inhomogeneity_variants(dir, manifest, &s1_config(field), tag, 0.05)?;
    }
    Ok(())
}

fn reproduce_s2(dir: &Path, manifest: &mut Manifest) -> Result<(), PresetError> {
    liquid_inhomogeneity_variants(dir, manifest, &s2_config(), "multispin", 0.05)
}

fn reproduce_s4(dir: &Path, manifest: &mut Manifest) -> Result<(), PresetError> {
    liquid_inhomogeneity_variants(dir, manifest, &s4_config(), "lowfield", 0.10)
}

/// Convenience used by the comparison subcommand: a one-line verdict per
/// channel.
pub fn summarize_comparison(report: &crate::scenarios::ComparisonReport) -> String {
    match &report.outcome {
        ComparisonOutcome::DegenerateK { message, .. } => format!("degenerate: {message}"),
        ComparisonOutcome::Compared(devs) => devs
            .iter()
            .map(|d| format!("{}: rms {:.4e}, max {:.4e}", d.name, d.rms, d.max))
            .collect::<Vec<_>>()
            .join("; "),
    }
}
