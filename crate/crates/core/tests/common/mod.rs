#![allow(dead_code)]

use toric_kring_core::{BigInt, Fan, LatticeVector, LaurentPoly};

pub fn lv(d: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(d)
}

pub fn poly(rank: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(rank, terms.iter().map(|(u, c)| (lv(u), BigInt::from(*c)))).unwrap()
}

fn build(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        rank,
        rays.iter().map(|r| lv(r)).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .unwrap()
}

pub fn ex36() -> Fan {
    build(
        2,
        &[&[1, 0], &[4, 1], &[2, 1], &[0, 1]],
        &[&[0, 1], &[2, 1], &[3, 2]],
    )
}

pub fn ex6() -> Fan {
    build(
        2,
        &[&[1, 0], &[4, 1], &[2, 1], &[0, 1], &[-1, -1]],
        &[&[0, 1], &[2, 1], &[3, 2], &[0, 4], &[3, 4]],
    )
}

pub fn ex38() -> Fan {
    build(
        3,
        &[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[0, 1, 1],
            &[1, 0, 1],
            &[1, 1, 1],
            &[-1, -1, -1],
        ],
        &[
            &[0, 1, 5],
            &[3, 5, 1],
            &[4, 5, 0],
            &[2, 3, 4, 5],
            &[0, 1, 6],
            &[0, 4, 6],
            &[2, 4, 6],
            &[3, 1, 6],
            &[2, 3, 6],
        ],
    )
}

/// Smooth complete fan of the projective plane.
pub fn p2() -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[0, 1], &[1, 2], &[2, 0]],
    )
}

/// Hirzebruch surface F_2.
pub fn hirzebruch2() -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, 2], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

/// Smooth complete fan of P^1 x P^1 x P^1.
pub fn cube() -> Fan {
    let mut rays: Vec<LatticeVector> = Vec::new();
    for i in 0..3 {
        rays.push(LatticeVector::unit(3, i));
        rays.push(-&LatticeVector::unit(3, i));
    }
    let mut cones = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                cones.push(vec![a, 2 + b, 4 + c]);
            }
        }
    }
    Fan::new(3, rays, cones).unwrap()
}
