use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::{Gate, CATALOG_UNITARY_TOL};
use crate::error::{Error, Result};
use crate::qmath::matrix::{ComplexMatrix, ONE, ZERO};

/// Canonical names of the benchmark gates, in table order.
pub const TABLE_GATES: [&str; 13] = [
    "CNOT", "DCNOT", "B", "RXX", "iSWAP", "sqrtSWAP", "Sycamore", "Magic", "DagwoodBumstead", "CS",
    "CT", "ECR", "CSX",
];

/// Extra named gates that are not benchmark rows.
const EXTRA_GATES: [&str; 2] = ["SWAP", "Identity"];

/// Every catalog name, benchmark rows first.
pub fn catalog_names() -> Vec<&'static str> {
    TABLE_GATES.iter().chain(EXTRA_GATES.iter()).copied().collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|ch| !matches!(ch, ' ' | '_' | '-' | '(' | ')'))
        .flat_map(char::to_lowercase)
        .collect()
}

fn canonical(name: &str) -> Option<&'static str> {
    let key = normalize(name);
    let hit = match key.as_str() {
        "cnot" | "cx" => "CNOT",
        "dcnot" => "DCNOT",
        "b" | "berkeleyb" => "B",
        "rxx" | "xx" => "RXX",
        "iswap" => "iSWAP",
        "sqrtswap" | "√swap" | "rootswap" => "sqrtSWAP",
        "sycamore" | "syc" => "Sycamore",
        "magic" => "Magic",
        "dagwoodbumstead" | "db" => "DagwoodBumstead",
        "cs" => "CS",
        "ct" => "CT",
        "ecr" | "echoedcrossresonance" => "ECR",
        "csx" => "CSX",
        "swap" => "SWAP",
        "identity" | "id" | "i" => "Identity",
        _ => return None,
    };
    Some(hit)
}

fn matrix_for(name: &str) -> ComplexMatrix {
    let (c8, s8) = ((PI / 8.0).cos(), (PI / 8.0).sin());
    let (c38, s38) = ((3.0 * PI / 8.0).cos(), (3.0 * PI / 8.0).sin());
    let h = FRAC_1_SQRT_2;
    match name {
        "CNOT" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
            [ZERO, ZERO, ONE, ZERO],
        ]),
        "DCNOT" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ZERO, ZERO, ONE],
            [ZERO, ONE, ZERO, ZERO],
        ]),
        "B" => ComplexMatrix::from_rows([
            [c(c8, 0.0), ZERO, ZERO, c(0.0, s8)],
            [ZERO, c(c38, 0.0), c(0.0, s38), ZERO],
            [ZERO, c(0.0, s38), c(c38, 0.0), ZERO],
            [c(0.0, s8), ZERO, ZERO, c(c8, 0.0)],
        ]),
        // exp(-i pi/4 X(x)X) = (I - i X(x)X)/sqrt2
        "RXX" => ComplexMatrix::from_rows([
            [c(h, 0.0), ZERO, ZERO, c(0.0, -h)],
            [ZERO, c(h, 0.0), c(0.0, -h), ZERO],
            [ZERO, c(0.0, -h), c(h, 0.0), ZERO],
            [c(0.0, -h), ZERO, ZERO, c(h, 0.0)],
        ]),
        "iSWAP" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ZERO, c(0.0, 1.0), ZERO],
            [ZERO, c(0.0, 1.0), ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ]),
        "sqrtSWAP" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, c(0.5, 0.5), c(0.5, -0.5), ZERO],
            [ZERO, c(0.5, -0.5), c(0.5, 0.5), ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ]),
        "Sycamore" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ZERO, c(0.0, -1.0), ZERO],
            [ZERO, c(0.0, -1.0), ZERO, ZERO],
            [ZERO, ZERO, ZERO, Complex64::from_polar(1.0, -PI / 6.0)],
        ]),
        "Magic" => ComplexMatrix::from_rows([
            [c(h, 0.0), c(0.0, h), ZERO, ZERO],
            [ZERO, ZERO, c(0.0, h), c(h, 0.0)],
            [ZERO, ZERO, c(0.0, h), c(-h, 0.0)],
            [c(h, 0.0), c(0.0, -h), ZERO, ZERO],
        ]),
        "DagwoodBumstead" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, c(c38, 0.0), c(0.0, -s38), ZERO],
            [ZERO, c(0.0, -s38), c(c38, 0.0), ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ]),
        "CS" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ZERO, ZERO, c(0.0, 1.0)],
        ]),
        "CT" => ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ZERO, ZERO, Complex64::from_polar(1.0, PI / 4.0)],
        ]),
        "ECR" => ComplexMatrix::from_rows([
            [ZERO, ZERO, c(h, 0.0), c(0.0, h)],
            [ZERO, ZERO, c(0.0, h), c(h, 0.0)],
            [c(h, 0.0), c(0.0, -h), ZERO, ZERO],
            [c(0.0, -h), c(h, 0.0), ZERO, ZERO],
        ]),
        "CSX" => {
            let p = Complex64::from_polar(h, PI / 4.0);
            ComplexMatrix::from_rows([
                [ONE, ZERO, ZERO, ZERO],
                [ZERO, ONE, ZERO, ZERO],
                [ZERO, ZERO, p, p.conj()],
                [ZERO, ZERO, p.conj(), p],
            ])
        }
        "SWAP" => super::swap_matrix(),
        "Identity" => ComplexMatrix::identity(4),
        other => unreachable!("no matrix for catalog name {other}"),
    }
}

/// Case-insensitive catalog lookup (spaces, `_`, `-` ignored).
pub fn catalog_lookup(name: &str) -> Result<Gate> {
    let canon = canonical(name).ok_or_else(|| Error::UnknownGate {
        name: name.to_owned(),
        valid: catalog_names().join(", "),
    })?;
    Gate::new(canon, matrix_for(canon), CATALOG_UNITARY_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_gate_is_unitary() {
        for name in catalog_names() {
            let g = catalog_lookup(name).unwrap();
            assert!(g.matrix().unitarity_residual() < 1e-10, "{name}");
        }
    }

    #[test]
    fn aliases_and_case() {
        assert_eq!(catalog_lookup("xx").unwrap().name(), "RXX");
        assert_eq!(catalog_lookup("EchoedCrossResonance").unwrap().name(), "ECR");
        assert_eq!(catalog_lookup("Berkeley B").unwrap().name(), "B");
        assert_eq!(catalog_lookup("dagwood_bumstead").unwrap().name(), "DagwoodBumstead");
        assert_eq!(catalog_lookup("cnot").unwrap().name(), "CNOT");
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        match catalog_lookup("toffoli") {
            Err(Error::UnknownGate { valid, .. }) => assert!(valid.contains("Sycamore")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn displayed_entries() {
        let cnot = catalog_lookup("CNOT").unwrap();
        assert_eq!(cnot.matrix()[(2, 3)], ONE);
        assert_eq!(cnot.matrix()[(3, 2)], ONE);
        assert_eq!(cnot.matrix()[(2, 2)], ZERO);

        let cs = catalog_lookup("CS").unwrap();
        assert_eq!(cs.matrix(), &ComplexMatrix::from_rows([
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ZERO, ZERO, c(0.0, 1.0)],
        ]));

        let syc = catalog_lookup("Sycamore").unwrap();
        let corner = syc.matrix()[(3, 3)];
        assert!((corner - c((PI / 6.0).cos(), -(PI / 6.0).sin())).norm() < 1e-15);
        assert_eq!(syc.matrix()[(1, 2)], c(0.0, -1.0));
        assert_eq!(syc.matrix()[(2, 1)], c(0.0, -1.0));
    }

    #[test]
    fn rxx_is_exponential_of_xx() {
        // exp(-i t XX) = cos t I - i sin t XX with t = pi/4
        let x = crate::qmath::matrix::pauli_x();
        let xx = x.kron(&x);
        let t = PI / 4.0;
        let mut expected = ComplexMatrix::identity(4).scale_real(t.cos());
        let minus_i_sin = xx.scale(c(0.0, -t.sin()));
        expected = &expected + &minus_i_sin;
        let rxx = catalog_lookup("RXX").unwrap();
        assert!(rxx.matrix().max_abs_diff(&expected) < 1e-15);
    }
}
