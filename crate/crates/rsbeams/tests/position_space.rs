//! Position-space cross-check of the momentum-space expectation values.
//!
//! The correspondence identities read `⟨Ĥ⟩ = E/N` and `⟨p̂⟩ = P/N` with the
//! classical integrals `E = ∫F*·F d³r`, `P = (−i/c)∫F*×F d³r`. Full beams
//! carry infinite totals, so the check uses a Gaussian window along `z` on
//! a finite grid and compares the `N`-free ratio `E_w/(c P_{z,w})` against
//! `⟨Ĥ⟩/(c⟨p̂_z⟩)` at loose tolerance.

use rsbeams::beams::{Helicity, LgBeamSpec, LgRsField};
use rsbeams::fields::{
    energy_density, momentum_density, transverse_integral, Constants, RsField, SpacetimePoint,
};
use rsbeams::momentum::{expectation_energy, expectation_pz, LgAmplitude, PhotonAmplitude};
use rsbeams::quad::QuadSpec;

#[test]
fn windowed_energy_momentum_ratio_matches_momentum_space() {
    let consts = Constants::natural();
    let spec = LgBeamSpec::new(20.0, 0, 0, 1.0, Helicity::Plus).unwrap();
    let field = LgRsField::new(spec, &consts);

    let amp = PhotonAmplitude::LaguerreGauss(LgAmplitude::from_beam(&spec));
    let ratio_momentum = expectation_energy(&amp, &consts).unwrap()
        / (consts.c * expectation_pz(&amp, &consts).unwrap());

    // Gaussian window w(z) = exp(−(z/L)²); L well above the axial beat
    // length so the window negligibly mixes the spectral content
    let window_l = 60.0;
    let z_max = 3.5 * window_l;
    let slices = 280usize; // Simpson cells over [−z_max, z_max]
    let dz = 2.0 * z_max / slices as f64;

    let densities = |p: &SpacetimePoint| {
        let f = field.value(p);
        [energy_density(&f), momentum_density(&f, &consts)[2]]
    };

    let mut energy = 0.0;
    let mut momentum_z = 0.0;
    for j in 0..=slices {
        let z = -z_max + dz * j as f64;
        // transverse envelope parameter a = l² + iσcz/Ω sets the slice radius
        let a_im = consts.c * z / spec.omega;
        let a_abs = (spec.waist.powi(4) + a_im * a_im).sqrt();
        let radius = 5.0 * a_abs / spec.waist;
        let slice =
            transverse_integral(&densities, z, 0.0, radius, &QuadSpec::new(1e-9, 1e-14))
                .unwrap()
                .value;
        let gauss = (-(z / window_l) * (z / window_l)).exp();
        let simpson = if j == 0 || j == slices {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        energy += simpson * gauss * slice[0];
        momentum_z += simpson * gauss * slice[1];
    }
    let ratio_position = energy / (consts.c * momentum_z);

    assert!(energy > 0.0 && momentum_z > 0.0);
    let deviation = (ratio_position / ratio_momentum - 1.0).abs();
    assert!(
        deviation < 1e-3,
        "windowed position-space ratio {ratio_position:.8} vs momentum-space {ratio_momentum:.8} (dev {deviation:.2e})"
    );
}
