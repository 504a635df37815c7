//! Subcommand implementations: sample, verify, spectrum, observables.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rsbeams::beams::{
    bessel_rs_field, polarization_identity_residuals, BesselChi, BesselRsField, Helicity,
    LgBeamSpec, LgChi, LgRsField, VectorBasis, WaveVector,
};
use rsbeams::fd::{FdSpec, StencilOrder};
use rsbeams::fields::{
    angular_momentum_density, energy_density, momentum_density, whittaker_map, ComplexVec3,
    RsField, ScalarField, SpacetimePoint, ValueOnly,
};
use rsbeams::momentum::{
    expectation_energy_with_tolerance, expectation_helicity_with_tolerance,
    expectation_mz_with_tolerance, expectation_pz_with_tolerance, photon_norm_with_tolerance,
    LgAmplitude, PhotonAmplitude,
};
use rsbeams::operators::{apply_mz, apply_pperp2, apply_pz, helicity_residual, ConjugatedField};
use rsbeams::spectrum::spectral_curve;
use rsbeams::verify::{convergence_order, dalembert_relative, maxwell_relative};

use crate::config::{BeamConfig, RunConfig};
use crate::csvout::{format_float, CsvWriter};

/// Command failure with the exit code contract: 1 for physics/verification
/// failures, 2 for usage, config, and I/O problems.
#[derive(Debug)]
pub enum CommandError {
    Physics(String),
    Usage(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Physics(_) => 1,
            CommandError::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CommandError::Physics(m) | CommandError::Usage(m) => m,
        }
    }
}

fn usage_err<T>(msg: impl Into<String>) -> Result<T, CommandError> {
    Err(CommandError::Usage(msg.into()))
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tiny deterministic point generator (64-bit LCG); verification must be
/// byte-reproducible across runs, so no external RNG.
struct PointStream {
    state: u64,
}

impl PointStream {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn unit(&mut self) -> f64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.state >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn point(&mut self, spatial: f64, temporal: f64) -> SpacetimePoint {
        SpacetimePoint::new(
            self.in_range(-spatial, spatial),
            self.in_range(-spatial, spatial),
            self.in_range(-spatial, spatial),
            self.in_range(-temporal, temporal),
        )
    }
}

/// The configured beam as boxed evaluators.
struct BeamHandles {
    field: Box<dyn RsField>,
    chi: Box<dyn ScalarField>,
}

fn beam_handles(config: &RunConfig) -> BeamHandles {
    let consts = config.constants();
    match &config.beam {
        BeamConfig::Bessel(spec) => BeamHandles {
            field: Box::new(BesselRsField::new(*spec, &consts)),
            chi: Box::new(BesselChi::new(*spec, &consts)),
        },
        BeamConfig::LaguerreGauss(spec) => BeamHandles {
            field: Box::new(LgRsField::new(*spec, &consts)),
            chi: Box::new(LgChi::new(*spec, &consts)),
        },
    }
}

/// Fault-injection wrapper: negates the z component of the field value.
struct NegatedZField<'a>(&'a dyn RsField);

impl RsField for NegatedZField<'_> {
    fn value(&self, p: &SpacetimePoint) -> ComplexVec3 {
        let v = self.0.value(p);
        ComplexVec3::new(v.x, v.y, -v.z)
    }
}

// ---------------------------------------------------------------- sample --

pub fn cmd_sample(config: &RunConfig, out: &Path) -> Result<(), CommandError> {
    let consts = config.constants();
    let handles = beam_handles(config);
    let file = File::create(out)
        .map_err(|e| CommandError::Usage(format!("cannot write {}: {e}", out.display())))?;
    let mut csv = CsvWriter::new(BufWriter::new(file));

    let write = |csv: &mut CsvWriter<BufWriter<File>>| -> std::io::Result<()> {
        csv.comment(&format!("rsbeams sample v{VERSION}"))?;
        csv.comment(&format!("constants = {}", config.preset.name()))?;
        csv.comment(&format!("beam = {}", config.beam.describe()))?;
        let basis_name = match config.basis {
            VectorBasis::Cartesian => "cartesian (f1,f2,f3) = (Fx,Fy,Fz)",
            VectorBasis::Cylindrical => "cylindrical (f1,f2,f3) = (Frho,Fphi,Fz)",
        };
        csv.comment(&format!("basis = {basis_name}"))?;
        csv.comment(&format!("points = {}", config.grid.point_count()))?;
        csv.comment(
            "columns: coordinates (length, time units of the preset); F components \
             (RS field units); energy density F*.F; momentum density (-i/c)(F* x F); \
             angular momentum density z component",
        )?;
        csv.header(&[
            "x", "y", "z", "t", "re_f1", "im_f1", "re_f2", "im_f2", "re_f3", "im_f3",
            "energy_density", "momentum_x", "momentum_y", "momentum_z", "angular_momentum_z",
        ])?;
        Ok(())
    };
    write(&mut csv).map_err(|e| CommandError::Usage(format!("write failed: {e}")))?;

    for &t in &config.grid.t.values() {
        for &z in &config.grid.z.values() {
            for &y in &config.grid.y.values() {
                for &x in &config.grid.x.values() {
                    let p = SpacetimePoint::new(x, y, z, t);
                    let cartesian = handles.field.value(&p);
                    let displayed = match config.basis {
                        VectorBasis::Cartesian => cartesian,
                        VectorBasis::Cylindrical => {
                            if p.rho() == 0.0 {
                                return usage_err(
                                    "cylindrical basis is undefined on the beam axis \
                                     (grid contains rho = 0)",
                                );
                            }
                            match &config.beam {
                                BeamConfig::Bessel(spec) => {
                                    bessel_rs_field(spec, &p, &consts, VectorBasis::Cylindrical)
                                        .map_err(|e| CommandError::Usage(e.to_string()))?
                                }
                                BeamConfig::LaguerreGauss(_) => {
                                    rotate_to_cylindrical(&cartesian, p.phi())
                                }
                            }
                        }
                    };
                    let energy = energy_density(&cartesian);
                    let momentum = momentum_density(&cartesian, &consts);
                    let angular =
                        angular_momentum_density(&cartesian, [p.x, p.y, p.z], &consts);
                    csv.row(&[
                        p.x,
                        p.y,
                        p.z,
                        p.t,
                        displayed.x.re,
                        displayed.x.im,
                        displayed.y.re,
                        displayed.y.im,
                        displayed.z.re,
                        displayed.z.im,
                        energy,
                        momentum[0],
                        momentum[1],
                        momentum[2],
                        angular[2],
                    ])
                    .map_err(|e| CommandError::Usage(format!("write failed: {e}")))?;
                }
            }
        }
    }
    Ok(())
}

fn rotate_to_cylindrical(v: &ComplexVec3, phi: f64) -> ComplexVec3 {
    let (sin_phi, cos_phi) = phi.sin_cos();
    ComplexVec3::new(
        v.x * cos_phi + v.y * sin_phi,
        -v.x * sin_phi + v.y * cos_phi,
        v.z,
    )
}

// ---------------------------------------------------------------- verify --

struct Check {
    name: &'static str,
    measured: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

pub fn cmd_verify(config: &RunConfig, out: &mut impl Write) -> Result<(), CommandError> {
    let consts = config.constants();
    let handles = beam_handles(config);
    let fd = config.fd_spec();
    let (k_char, omega_char) = config.characteristic_scales();

    let base_field: &dyn RsField = handles.field.as_ref();
    let corrupted;
    let field: &dyn RsField = if config.corrupt_negate_fz {
        corrupted = NegatedZField(base_field);
        &corrupted
    } else {
        base_field
    };

    // residual tolerances declared per stencil order and family
    let (maxwell_tol, wave_tol) = match (&config.beam, config.fd_order) {
        (BeamConfig::Bessel(_), StencilOrder::Four) => (1e-8, 1e-8),
        (BeamConfig::Bessel(_), StencilOrder::Two) => (1e-4, 1e-4),
        (BeamConfig::LaguerreGauss(_), StencilOrder::Four) => (1e-6, 1e-6),
        (BeamConfig::LaguerreGauss(_), StencilOrder::Two) => (1e-3, 1e-3),
    };

    let mut checks: Vec<Check> = Vec::new();
    let mut stream = PointStream::new(0x5eed);
    let spatial = 1.0 / k_char.min(1.0).max(0.2);
    let points: Vec<SpacetimePoint> = (0..20)
        .map(|_| stream.point(spatial, spatial / consts.c))
        .collect();

    // Maxwell residual through pure finite differences of the field values
    let fd_only = |p: &SpacetimePoint| field.value(p);
    let mut worst = 0.0f64;
    for p in &points {
        let check = maxwell_relative(&fd_only, p, &consts, &fd)
            .map_err(|e| CommandError::Physics(e.to_string()))?;
        worst = worst.max(check.worst());
    }
    checks.push(Check {
        name: "maxwell_residual",
        measured: worst,
        tolerance: maxwell_tol,
    });

    // d'Alembert residual of the scalar generator
    let chi_values = ValueOnly(handles.chi.as_ref());
    let mut worst = 0.0f64;
    for p in &points {
        let r = dalembert_relative(&chi_values, p, &consts, &fd)
            .map_err(|e| CommandError::Physics(e.to_string()))?;
        worst = worst.max(r);
    }
    checks.push(Check {
        name: "dalembert_residual",
        measured: worst,
        tolerance: wave_tol,
    });

    // Whittaker consistency: FD route of the map against the field values
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    let mut deviations = Vec::new();
    for p in &points {
        let mapped = whittaker_map(&chi_values, p, &consts, &fd)
            .map_err(|e| CommandError::Physics(e.to_string()))?;
        let reference = field.value(p);
        scale = scale.max(reference.norm());
        deviations.push((mapped - reference).norm());
    }
    for d in deviations {
        worst = worst.max(d / scale);
    }
    checks.push(Check {
        name: "whittaker_consistency",
        measured: worst,
        tolerance: maxwell_tol,
    });

    // measured convergence order of the Maxwell residual under refinement;
    // the 4th-order ladder stays in the truncation-dominated regime
    let (nominal, ladder): (f64, [f64; 3]) = match config.fd_order {
        StencilOrder::Four => (4.0, [2e-2, 1e-2, 5e-3]),
        StencilOrder::Two => (2.0, [1e-2, 1e-3, 1e-4]),
    };
    let mut residuals = Vec::new();
    for &factor in &ladder {
        let fd_h = FdSpec {
            steps: [
                factor / k_char,
                factor / k_char,
                factor / k_char,
                factor / omega_char,
            ],
            order: config.fd_order,
        };
        let mut mean = 0.0;
        for p in points.iter().take(8) {
            mean += maxwell_relative(&fd_only, p, &consts, &fd_h)
                .map_err(|e| CommandError::Physics(e.to_string()))?
                .curl_rel;
        }
        residuals.push(mean / 8.0);
    }
    let slope = convergence_order(&ladder, &residuals);
    writeln!(out, "measured convergence order: {slope:.3} (nominal {nominal})")
        .map_err(|e| CommandError::Usage(e.to_string()))?;
    checks.push(Check {
        name: "convergence_order",
        measured: (slope - nominal).abs(),
        tolerance: 0.3,
    });

    // eigenvalue suite on the photon wave function
    match &config.beam {
        BeamConfig::Bessel(spec) => {
            let k = spec.total_wavenumber();
            let conjugated;
            let psi: &dyn RsField = match spec.sigma {
                Helicity::Plus => field,
                Helicity::Minus => {
                    conjugated = ConjugatedField(field);
                    &conjugated
                }
            };
            let hbar = consts.hbar;
            let mut worst_pz = 0.0f64;
            let mut worst_pperp = 0.0f64;
            let mut worst_mz = 0.0f64;
            let mut worst_hel = 0.0f64;
            for p in &points {
                let value = psi.value(p);
                let norm = value.norm();
                if norm < 1e-12 {
                    continue;
                }
                let pz = apply_pz(psi, p, &consts, &fd)
                    .map_err(|e| CommandError::Physics(e.to_string()))?;
                worst_pz = worst_pz
                    .max((pz - value * (hbar * spec.k_z)).norm() / (norm * hbar * k));
                let pp = apply_pperp2(psi, p, &consts, &fd)
                    .map_err(|e| CommandError::Physics(e.to_string()))?;
                worst_pperp = worst_pperp.max(
                    (pp - value * (hbar * hbar * spec.k_perp * spec.k_perp)).norm()
                        / (norm * hbar * hbar * k * k),
                );
                let mz = apply_mz(psi, p, &consts, &fd)
                    .map_err(|e| CommandError::Physics(e.to_string()))?;
                worst_mz = worst_mz.max(
                    (mz - value * (hbar * spec.m as f64)).norm()
                        / (norm * hbar * (1.0 + spec.m.abs() as f64)),
                );
                let hres = helicity_residual(psi, p, k, spec.sigma, &fd)
                    .map_err(|e| CommandError::Physics(e.to_string()))?;
                worst_hel = worst_hel.max(hres.norm() / (norm * k));
            }
            checks.push(Check {
                name: "eigenvalue_pz",
                measured: worst_pz,
                tolerance: 1e-6,
            });
            checks.push(Check {
                name: "eigenvalue_pperp2",
                measured: worst_pperp,
                tolerance: 1e-6,
            });
            checks.push(Check {
                name: "eigenvalue_mz",
                measured: worst_mz,
                tolerance: 1e-6,
            });
            checks.push(Check {
                name: "helicity_relation",
                measured: worst_hel,
                tolerance: 1e-6,
            });
        }
        BeamConfig::LaguerreGauss(spec) => {
            let hbar = consts.hbar;
            let target = spec.sigma.sign() * spec.m as f64 * hbar;
            let mut worst_mz = 0.0f64;
            for p in &points {
                let value = field.value(p);
                let norm = value.norm();
                if norm < 1e-12 {
                    continue;
                }
                let mz = apply_mz(field, p, &consts, &fd)
                    .map_err(|e| CommandError::Physics(e.to_string()))?;
                worst_mz = worst_mz
                    .max((mz - value * target).norm() / (norm * hbar * (1.0 + spec.m as f64)));
            }
            checks.push(Check {
                name: "eigenvalue_mz",
                measured: worst_mz,
                tolerance: 1e-6,
            });
        }
    }

    // polarization identities over deterministic wave vectors
    let mut worst_bilinear = 0.0f64;
    let mut worst_eigen = 0.0f64;
    let mut produced = 0;
    while produced < 200 {
        let k = WaveVector::new(
            stream.in_range(-4.0, 4.0),
            stream.in_range(-4.0, 4.0),
            stream.in_range(-4.0, 4.0),
        );
        if k.k_perp() < 1e-3 {
            continue;
        }
        produced += 1;
        let (bilinear, eigen) = polarization_identity_residuals(&k)
            .map_err(|e| CommandError::Physics(e.to_string()))?;
        worst_bilinear = worst_bilinear.max(bilinear);
        worst_eigen = worst_eigen.max(eigen);
    }
    checks.push(Check {
        name: "polarization_bilinear_identity",
        measured: worst_bilinear,
        tolerance: 1e-12,
    });
    checks.push(Check {
        name: "polarization_eigen_relation",
        measured: worst_eigen,
        tolerance: 1e-12,
    });

    // report
    let mut all_passed = true;
    for check in &checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        all_passed &= check.passed();
        writeln!(
            out,
            "{}: measured {} vs tolerance {} {status}",
            check.name,
            format_float(check.measured),
            format_float(check.tolerance),
        )
        .map_err(|e| CommandError::Usage(e.to_string()))?;
    }
    if all_passed {
        Ok(())
    } else {
        let failing: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect();
        Err(CommandError::Physics(format!(
            "verification failed: {}",
            failing.join(", ")
        )))
    }
}

// -------------------------------------------------------------- spectrum --

pub struct SpectrumArgs {
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub count: usize,
    /// Extra (n, m) cases; each is exported to its own suffixed file.
    pub cases: Vec<(u32, u32)>,
}

pub fn cmd_spectrum(
    config: &RunConfig,
    args: &SpectrumArgs,
    out: &Path,
) -> Result<Vec<PathBuf>, CommandError> {
    let consts = config.constants();
    let base = match &config.beam {
        BeamConfig::LaguerreGauss(spec) => *spec,
        BeamConfig::Bessel(_) => {
            return usage_err(
                "spectral weights are defined for the lg family; Bessel beams are \
                 monochromatic (set family = lg)",
            )
        }
    };
    if args.count < 2 {
        return usage_err("count must be at least 2");
    }

    let cases: Vec<LgBeamSpec> = if args.cases.is_empty() {
        vec![base]
    } else {
        args.cases
            .iter()
            .map(|&(n, m)| {
                LgBeamSpec::new(base.omega, n, m, base.waist, base.sigma)
                    .map_err(|e| CommandError::Usage(e.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    let multiple = cases.len() > 1;

    let mut written = Vec::new();
    for spec in cases {
        let gamma = spec.waist * spec.waist * spec.omega / (consts.c * consts.c);
        let s = spec.n as f64 + spec.m as f64 / 2.0;
        let sign = spec.sigma.sign();
        let (lo, hi) = match (args.omega_min, args.omega_max) {
            (Some(a), Some(b)) => (a, b),
            (None, None) => {
                let lo = spec.omega;
                let hi = spec.omega + (s + 40.0) / gamma;
                if sign > 0.0 {
                    (lo, hi)
                } else {
                    (-hi, -lo)
                }
            }
            _ => return usage_err("provide both --omega-min and --omega-max or neither"),
        };
        let curve = spectral_curve(&spec, lo, hi, args.count, &consts)
            .map_err(|e| CommandError::Usage(e.to_string()))?;

        let path = if multiple {
            suffixed_path(out, &format!("_n{}_m{}", spec.n, spec.m))
        } else {
            out.to_path_buf()
        };
        let file = File::create(&path)
            .map_err(|e| CommandError::Usage(format!("cannot write {}: {e}", path.display())))?;
        let mut csv = CsvWriter::new(BufWriter::new(file));
        let io = (|| -> std::io::Result<()> {
            csv.comment(&format!("rsbeams spectrum v{VERSION}"))?;
            csv.comment(&format!("constants = {}", config.preset.name()))?;
            csv.comment(&format!(
                "beam = lg omega={} n={} m={} waist={} sigma={:+}",
                spec.omega,
                spec.n,
                spec.m,
                spec.waist,
                spec.sigma.sign() as i32
            ))?;
            csv.comment(&format!(
                "normalization_constant = {}",
                format_float(curve.normalization)
            ))?;
            csv.header(&["omega", "w"])?;
            for (omega, w) in curve.omegas.iter().zip(&curve.weights) {
                csv.row(&[*omega, *w])?;
            }
            Ok(())
        })();
        io.map_err(|e| CommandError::Usage(format!("write failed: {e}")))?;
        written.push(path);
    }
    Ok(written)
}

fn suffixed_path(base: &Path, suffix: &str) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}{suffix}.{ext}"))
}

// ----------------------------------------------------------- observables --

pub fn cmd_observables(config: &RunConfig, out: &mut impl Write) -> Result<(), CommandError> {
    let consts = config.constants();
    let spec = match &config.beam {
        BeamConfig::LaguerreGauss(spec) => *spec,
        BeamConfig::Bessel(_) => {
            return Err(CommandError::Physics(
                "Bessel amplitudes are delta-normalized: the photon norm per unit \
                 k_+ shell diverges, so normalized observables are undefined. \
                 Use an lg beam (family = lg), whose Gaussian transverse fall-off \
                 makes all per-shell integrals finite."
                    .into(),
            ))
        }
    };
    let amp = PhotonAmplitude::LaguerreGauss(LgAmplitude::from_beam(&spec));
    let tol = config.tol;
    let phys = |e: rsbeams::momentum::MomentumError| CommandError::Physics(e.to_string());
    let norm = photon_norm_with_tolerance(&amp, &consts, tol).map_err(phys)?;
    let energy = expectation_energy_with_tolerance(&amp, &consts, tol).map_err(phys)?;
    let pz = expectation_pz_with_tolerance(&amp, &consts, tol).map_err(phys)?;
    let mz = expectation_mz_with_tolerance(&amp, &consts, tol).map_err(phys)?;
    let lambda = expectation_helicity_with_tolerance(&amp, &consts, tol).map_err(phys)?;
    let mz_over_hbar = mz / consts.hbar;

    let mut w = |line: String| {
        writeln!(out, "{line}").map_err(|e| CommandError::Usage(e.to_string()))
    };
    w(format!("# rsbeams observables v{VERSION}"))?;
    w(format!("constants = {}", config.preset.name()))?;
    w(format!("beam = {}", config.beam.describe()))?;
    w(format!("photon_norm_per_shell = {}", format_float(norm)))?;
    w(format!("mean_energy = {}", format_float(energy)))?;
    w(format!("mean_pz = {}", format_float(pz)))?;
    w(format!("mean_mz = {}", format_float(mz)))?;
    w(format!("mean_helicity = {}", format_float(lambda)))?;
    w(format!("mz_over_hbar = {}", format_float(mz_over_hbar)))?;
    w(format!(
        "mz_deviation_from_m = {}",
        format_float(mz_over_hbar - spec.m as f64)
    ))?;
    w(format!(
        "energy_at_least_hbar_omega = {}",
        energy >= consts.hbar * spec.omega
    ))?;
    Ok(())
}
