//! Free-fermion oracle for the phase diagram of the anisotropic honeycomb
//! model at zero field.
//!
//! In the flux-free sector the model maps to free Majorana fermions with
//! dispersion `|f(k)| = |J_x e^{i k1} + J_y e^{i k2} + J_z|`; the two-particle
//! excitation gap in the thermodynamic limit is twice the minimum of `|f|`
//! over the Brillouin zone. The model is gapless exactly when the three
//! coupling magnitudes satisfy the triangle inequalities.

/// Phase classification of one coupling triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub j_x: f64,
    pub j_y: f64,
    pub j_z: f64,
    /// Thermodynamic-limit excitation gap (2 min |f|).
    pub gap: f64,
    /// Whether the gap vanishes (below `tol_factor` times the coupling scale).
    pub gapless: bool,
}

fn dispersion(j_x: f64, j_y: f64, j_z: f64, t1: f64, t2: f64) -> f64 {
    let re = j_x * t1.cos() + j_y * t2.cos() + j_z;
    let im = j_x * t1.sin() + j_y * t2.sin();
    (re * re + im * im).sqrt()
}

/// Minimize `|f|` over the Brillouin zone: coarse grid scan (at least 64 x 64)
/// followed by a compass-search refinement of the best point.
///
/// `tol_factor` scales the gapless threshold relative to the largest coupling
/// magnitude (a vanishing minimum is only found to refinement precision).
pub fn freefermion_gap(
    j_x: f64,
    j_y: f64,
    j_z: f64,
    grid: usize,
    tol_factor: f64,
) -> PhasePoint {
    let n = grid.max(64);
    let tau = std::f64::consts::TAU;
    let step0 = tau / n as f64;

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n {
        let t1 = i as f64 * step0;
        for j in 0..n {
            let t2 = j as f64 * step0;
            let v = dispersion(j_x, j_y, j_z, t1, t2);
            if v < best.0 {
                best = (v, t1, t2);
            }
        }
    }

    let mut step = step0;
    let mut evals = 0usize;
    while step > 1e-12 && evals < 1_000_000 {
        let mut improved = false;
        evals += 8;
        for (di, dj) in [
            (1.0, 0.0),
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, 1.0),
            (1.0, -1.0),
            (-1.0, 1.0),
            (-1.0, -1.0),
        ] {
            let t1 = best.1 + di * step;
            let t2 = best.2 + dj * step;
            let v = dispersion(j_x, j_y, j_z, t1, t2);
            if v < best.0 {
                best = (v, t1, t2);
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let gap = 2.0 * best.0;
    let scale = j_x.abs().max(j_y.abs()).max(j_z.abs());
    PhasePoint { j_x, j_y, j_z, gap, gapless: gap <= tol_factor * scale }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-8;

    #[test]
    fn isotropic_point_is_gapless() {
        let p = freefermion_gap(1.0, 1.0, 1.0, 64, TOL);
        assert!(p.gapless, "gap = {}", p.gap);
        assert!(p.gap < 1e-8);
    }

    #[test]
    fn dimer_limit_gap_is_exact() {
        let p = freefermion_gap(0.0, 0.0, 0.75, 64, TOL);
        assert_eq!(p.gap, 1.5);
        assert!(!p.gapless);
    }

    #[test]
    fn triangle_inequality_separates_the_phases() {
        // Inside the gapless region.
        assert!(freefermion_gap(0.5, 0.5, 0.9, 64, TOL).gapless);
        // Outside: J_z > J_x + J_y gaps out with gap = 2(J_z - J_x - J_y).
        let p = freefermion_gap(0.5, 0.5, 1.4, 64, TOL);
        assert!(!p.gapless);
        assert!((p.gap - 0.8).abs() < 1e-9, "gap = {}", p.gap);
    }

    #[test]
    fn gap_is_symmetric_under_coupling_permutations() {
        let a = freefermion_gap(0.3, 0.5, 1.1, 64, TOL).gap;
        let b = freefermion_gap(1.1, 0.3, 0.5, 64, TOL).gap;
        let c = freefermion_gap(0.5, 1.1, 0.3, 64, TOL).gap;
        assert!((a - b).abs() < 1e-9);
        assert!((a - c).abs() < 1e-9);
    }
}
