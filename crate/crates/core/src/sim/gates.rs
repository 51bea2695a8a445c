use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use super::state::{z_sign, Statevector};
use crate::{Error, Result, C64};

/// Row-major 2x2 complex matrix.
pub type Mat2 = [[C64; 2]; 2];

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

pub const UNITARY_TOLERANCE: f64 = 1e-10;
pub const PHASE_TOLERANCE: f64 = 1e-12;

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

fn mat2_dagger(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Hermitian generators `G` of single-qubit gates written as `exp(i * angle * G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    Y,
    Z,
    /// `pi/2 * (1 - (Z + X)/sqrt 2)`, whose unit-angle exponential is the
    /// Hadamard gate exactly.
    Hadamard,
}

impl Generator {
    pub fn matrix(self) -> Mat2 {
        let h = FRAC_PI_2 * FRAC_1_SQRT_2;
        match self {
            Generator::X => [[ZERO, ONE], [ONE, ZERO]],
            Generator::Y => [[ZERO, -I], [I, ZERO]],
            Generator::Z => [[ONE, ZERO], [ZERO, -ONE]],
            Generator::Hadamard => [
                [C64::new(FRAC_PI_2 - h, 0.0), C64::new(-h, 0.0)],
                [C64::new(-h, 0.0), C64::new(FRAC_PI_2 + h, 0.0)],
            ],
        }
    }

    /// Closed form of `exp(i * angle * G)`.
    pub fn exp(self, angle: f64) -> Mat2 {
        let pauli = |p: Mat2, theta: f64| -> Mat2 {
            let (s, c) = theta.sin_cos();
            let mut out = [[ZERO; 2]; 2];
            for r in 0..2 {
                for col in 0..2 {
                    let id = if r == col { c } else { 0.0 };
                    out[r][col] = C64::new(id, 0.0) + I * s * p[r][col];
                }
            }
            out
        };
        match self {
            Generator::X | Generator::Y | Generator::Z => pauli(self.matrix(), angle),
            Generator::Hadamard => {
                // pi/2 * (1 - n.sigma) with n = (1, 0, 1)/sqrt 2
                let theta = FRAC_PI_2 * angle;
                let axis = [
                    [C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)],
                    [C64::new(FRAC_1_SQRT_2, 0.0), C64::new(-FRAC_1_SQRT_2, 0.0)],
                ];
                let rot = pauli(axis, -theta);
                let phase = C64::from_polar(1.0, theta);
                rot.map(|row| row.map(|v| v * phase))
            }
        }
    }
}

/// A 2x2 unitary acting on one qubit (1-based index, qubit 1 = MSB).
#[derive(Debug, Clone, PartialEq)]
pub struct SingleQubitGate {
    target: usize,
    matrix: Mat2,
}

impl SingleQubitGate {
    pub fn new(target: usize, matrix: Mat2) -> Result<Self> {
        let prod = mat2_mul(&matrix, &mat2_dagger(&matrix));
        let deviation = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| (prod[r][c] - if r == c { ONE } else { ZERO }).norm())
            .fold(0.0, f64::max);
        if !(deviation <= UNITARY_TOLERANCE) {
            return Err(Error::NotUnitary { deviation });
        }
        if target == 0 {
            return Err(Error::QubitOutOfRange { qubit: 0, n: 0 });
        }
        Ok(Self { target, matrix })
    }

    pub fn from_generator(target: usize, generator: Generator, angle: f64) -> Result<Self> {
        Self::new(target, generator.exp(angle))
    }

    pub fn hadamard(target: usize) -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            target,
            matrix: [[h, h], [h, -h]],
        }
    }

    pub fn pauli_x(target: usize) -> Self {
        Self {
            target,
            matrix: Generator::X.matrix(),
        }
    }

    pub fn pauli_z(target: usize) -> Self {
        Self {
            target,
            matrix: Generator::Z.matrix(),
        }
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }
}

/// A gate `exp(i * angle * G)` kept in generator form so that control
/// noise can rescale it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationGate {
    pub target: usize,
    pub generator: Generator,
    pub angle: f64,
}

impl RotationGate {
    pub fn new(target: usize, generator: Generator, angle: f64) -> Self {
        Self {
            target,
            generator,
            angle,
        }
    }

    pub fn hadamard(target: usize) -> Self {
        Self::new(target, Generator::Hadamard, 1.0)
    }

    /// Pauli X up to the global phase `i`.
    pub fn x_pulse(target: usize) -> Self {
        Self::new(target, Generator::X, FRAC_PI_2)
    }

    /// The unitary with the generator scaled by `scale`.
    pub fn to_gate(&self, scale: f64) -> SingleQubitGate {
        SingleQubitGate {
            target: self.target,
            matrix: self.generator.exp(self.angle * scale),
        }
    }
}

/// A two-qubit gate diagonal in the computational basis. `phases` are
/// indexed by the bit pair `(control bit, target bit)` as `2*c + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalTwoQubitGate {
    control: usize,
    target: usize,
    phases: [C64; 4],
}

impl DiagonalTwoQubitGate {
    pub fn new(control: usize, target: usize, phases: [C64; 4]) -> Result<Self> {
        if control == target {
            return Err(Error::SameQubit(control));
        }
        for p in &phases {
            if (p.norm() - 1.0).abs() > PHASE_TOLERANCE {
                return Err(Error::NotUnitModulus { modulus: p.norm() });
            }
        }
        Ok(Self {
            control,
            target,
            phases,
        })
    }

    /// Controlled-R_k: phase `exp(2 pi i / 2^k)` on `|11>`.
    pub fn controlled_rk(control: usize, target: usize, k: u32) -> Result<Self> {
        let phi = 2.0 * PI / 2f64.powi(k as i32);
        Self::new(control, target, [ONE, ONE, ONE, C64::from_polar(1.0, phi)])
    }

    /// `exp(i * angle * Z_a Z_b)`.
    pub fn zz(a: usize, b: usize, angle: f64) -> Result<Self> {
        let p = C64::from_polar(1.0, angle);
        let m = C64::from_polar(1.0, -angle);
        Self::new(a, b, [p, m, m, p])
    }

    pub fn control(&self) -> usize {
        self.control
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn phases(&self) -> &[C64; 4] {
        &self.phases
    }
}

impl Statevector {
    /// Applies `gate` to its target qubit.
    pub fn apply_single(&mut self, gate: &SingleQubitGate) -> Result<()> {
        let shift = self.shift_of(gate.target)?;
        let m = &gate.matrix;
        let stride = 1usize << shift;
        let amps = self.amplitudes_mut();
        for base in (0..amps.len()).step_by(stride << 1) {
            for i in base..base + stride {
                let a0 = amps[i];
                let a1 = amps[i + stride];
                amps[i] = m[0][0] * a0 + m[0][1] * a1;
                amps[i + stride] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn apply_diagonal(&mut self, gate: &DiagonalTwoQubitGate) -> Result<()> {
        let sc = self.shift_of(gate.control)?;
        let st = self.shift_of(gate.target)?;
        for (i, a) in self.amplitudes_mut().iter_mut().enumerate() {
            let sel = (((i >> sc) & 1) << 1) | ((i >> st) & 1);
            *a *= gate.phases[sel];
        }
        Ok(())
    }

    /// `exp(i * angle * Z_a Z_b)` without building a gate value.
    pub fn apply_zz(&mut self, a: usize, b: usize, angle: f64) -> Result<()> {
        if a == b {
            return Err(Error::SameQubit(a));
        }
        let sa = self.shift_of(a)?;
        let sb = self.shift_of(b)?;
        let plus = C64::from_polar(1.0, angle);
        let minus = plus.conj();
        for (i, amp) in self.amplitudes_mut().iter_mut().enumerate() {
            *amp *= if z_sign(i, sa) * z_sign(i, sb) > 0.0 {
                plus
            } else {
                minus
            };
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::fidelity;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_generator_is_exact() {
        let h = Generator::Hadamard.exp(1.0);
        let r = FRAC_1_SQRT_2;
        let want = [[r, r], [r, -r]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(h[i][j], C64::new(want[i][j], 0.0)), "{h:?}");
            }
        }
    }

    #[test]
    fn single_qubit_examples() {
        let mut s = Statevector::basis_state(1, 0).unwrap();
        s.apply_single(&SingleQubitGate::hadamard(1)).unwrap();
        assert!(close(s.amplitudes()[0], C64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitudes()[1], C64::new(FRAC_1_SQRT_2, 0.0)));

        // |+> -> |->
        s.apply_single(&SingleQubitGate::pauli_z(1)).unwrap();
        assert!(close(s.amplitudes()[1], C64::new(-FRAC_1_SQRT_2, 0.0)));

        // X on qubit 1 of |00> -> |10>
        let mut s = Statevector::basis_state(2, 0).unwrap();
        s.apply_single(&SingleQubitGate::pauli_x(1)).unwrap();
        assert!(close(s.amplitudes()[0b10], ONE));

        assert!(s.apply_single(&SingleQubitGate::pauli_x(3)).is_err());
    }

    #[test]
    fn rejects_non_unitary() {
        let m = [[ONE, ONE], [ZERO, ONE]];
        assert!(matches!(
            SingleQubitGate::new(1, m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn controlled_rotations() {
        let mut s = Statevector::basis_state(2, 3).unwrap();
        s.apply_diagonal(&DiagonalTwoQubitGate::controlled_rk(1, 2, 1).unwrap())
            .unwrap();
        assert!(close(s.amplitudes()[3], -ONE));

        let mut s = Statevector::basis_state(2, 3).unwrap();
        s.apply_diagonal(&DiagonalTwoQubitGate::controlled_rk(1, 2, 2).unwrap())
            .unwrap();
        assert!(close(s.amplitudes()[3], I));

        let mut s = Statevector::basis_state(2, 1).unwrap();
        s.apply_diagonal(&DiagonalTwoQubitGate::controlled_rk(1, 2, 2).unwrap())
            .unwrap();
        assert!(close(s.amplitudes()[1], ONE));

        assert_eq!(
            DiagonalTwoQubitGate::controlled_rk(2, 2, 2),
            Err(Error::SameQubit(2))
        );
        assert!(DiagonalTwoQubitGate::new(1, 2, [ONE, ONE, ONE, ONE * 1.1]).is_err());
    }

    #[test]
    fn zz_shortcut_matches_gate() {
        let psi = Statevector::normalized(
            (0..8).map(|i| C64::new(i as f64 + 0.5, 1.0 - i as f64 * 0.3)).collect(),
        )
        .unwrap();
        let mut a = psi.clone();
        let mut b = psi;
        a.apply_zz(1, 3, 0.37).unwrap();
        b.apply_diagonal(&DiagonalTwoQubitGate::zz(1, 3, 0.37).unwrap())
            .unwrap();
        assert!((fidelity(&a, &b).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(a, b);
    }
}
