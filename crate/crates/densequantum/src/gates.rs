//! Gate matrices. Two-qubit matrices use local index b0 + 2·b1.

use iesb_core::{Clifford2, CliffordTable, Elementary, GateDraw, PauliRow, SeedPath};
use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64 as C;
use rand_distr::{Distribution, StandardNormal};

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

pub fn hadamard() -> Matrix2<C> {
    let h = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Matrix2::new(h, h, h, -h)
}

pub fn phase_s() -> Matrix2<C> {
    Matrix2::new(ONE, ZERO, ZERO, I)
}

pub fn pauli_x() -> Matrix2<C> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Matrix2<C> {
    Matrix2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Matrix2<C> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

/// Embeds a single-qubit matrix on local qubit `q` of a pair.
pub fn on_local(u: &Matrix2<C>, q: usize) -> Matrix4<C> {
    let id = Matrix2::<C>::identity();
    let k = if q == 0 { id.kronecker(u) } else { u.kronecker(&id) };
    Matrix4::from_fn(|i, j| k[(i, j)])
}

/// CNOT with local qubit 0 as control.
pub fn cx01() -> Matrix4<C> {
    let mut m = Matrix4::zeros();
    for b in 0..4usize {
        let (b0, b1) = (b & 1, b >> 1);
        m[((b1 ^ b0) << 1 | b0, b)] = ONE;
    }
    m
}

pub fn swap2() -> Matrix4<C> {
    let mut m = Matrix4::zeros();
    for b in 0..4usize {
        m[((b & 1) << 1 | b >> 1, b)] = ONE;
    }
    m
}

pub fn elementary(g: Elementary) -> Matrix4<C> {
    match g {
        Elementary::H(q) => on_local(&hadamard(), q as usize),
        Elementary::S(q) => on_local(&phase_s(), q as usize),
        Elementary::Cx01 => cx01(),
    }
}

/// Product of the element's word, first gate rightmost.
pub fn clifford_unitary(c: &Clifford2) -> Matrix4<C> {
    c.word.iter().fold(Matrix4::identity(), |acc, &g| elementary(g) * acc)
}

/// Signed Pauli operator described by a tableau row (x=z=1 is Y).
pub fn pauli_matrix(row: PauliRow) -> Matrix4<C> {
    let one = |q: usize| match (row.x(q), row.z(q)) {
        (false, false) => Matrix2::identity(),
        (true, false) => pauli_x(),
        (false, true) => pauli_z(),
        (true, true) => pauli_y(),
    };
    let p = one(1).kronecker(&one(0));
    let m = Matrix4::from_fn(|i, j| p[(i, j)]);
    if row.sign() {
        -m
    } else {
        m
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal moved into Q.
pub fn haar_unitary(dim: usize, seed: u64) -> DMatrix<C> {
    assert!(dim >= 2, "haar_unitary needs dim >= 2");
    let mut rng = SeedPath::root(seed).rng();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::<C>::from_fn(dim, dim, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C::new(re * s, im * s)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..dim {
            q[(i, j)] *= ph;
        }
    }
    q
}

pub fn gate_matrix(g: GateDraw) -> Matrix4<C> {
    match g {
        GateDraw::Clifford(i) => clifford_unitary(CliffordTable::get().element(i as usize)),
        GateDraw::Haar(seed) => {
            let u = haar_unitary(4, seed);
            Matrix4::from_fn(|i, j| u[(i, j)])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix4<C>, b: &Matrix4<C>) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn elementary_gates_match_tableau_rules() {
        let table = CliffordTable::get();
        let gens = [
            PauliRow::new([true, false], [false, false], false),
            PauliRow::new([false, true], [false, false], false),
            PauliRow::new([false, false], [true, false], false),
            PauliRow::new([false, false], [false, true], false),
        ];
        for i in (0..table.len()).step_by(37) {
            let c = table.element(i);
            let u = clifford_unitary(c);
            for (k, g) in gens.iter().enumerate() {
                let lhs = u * pauli_matrix(*g) * u.adjoint();
                assert!(close(&lhs, &pauli_matrix(c.images[k])), "element {i}, generator {k}");
            }
        }
    }

    #[test]
    fn cx_and_swap_act_on_basis_states() {
        let cx = cx01();
        // |b0=1, b1=0> = index 1 -> |1,1> = index 3
        assert_eq!(cx[(3, 1)], ONE);
        assert_eq!(cx[(0, 0)], ONE);
        let sw = swap2();
        assert_eq!(sw[(2, 1)], ONE);
        assert!(close(&(sw * sw), &Matrix4::identity()));
    }

    #[test]
    fn haar_is_unitary_and_seeded() {
        for seed in 0..20 {
            let u = haar_unitary(4, seed);
            let e = &u.adjoint() * &u - DMatrix::<C>::identity(4, 4);
            assert!(e.norm() < 1e-12);
        }
        assert_eq!(haar_unitary(3, 9), haar_unitary(3, 9));
        assert_ne!(haar_unitary(3, 9), haar_unitary(3, 10));
    }
}
