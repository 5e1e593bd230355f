use gauss_qec::dense::{self, CMatrix};
use gauss_qec::gauss_code::gauss_law_code;
use gauss_qec::hamiltonian::{
    self, boson_matrix, nonlocal_code, nonlocal_logical_form, nonlocal_matrix, to_bosonic, BosonOp,
    Couplings, TermKind,
};
use gauss_qec::{Lattice, PauliString, PauliSum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Chain Hamiltonian written directly on link qubits with a uniform hop sign.
fn chain_reference(n: usize, c: &Couplings) -> PauliSum {
    let mut h = PauliSum::new(n);
    let z = |qs: &[usize]| PauliString::z_on(n, qs);
    for l in 0..n {
        let s = if l % 2 == 0 { 1.0 } else { -1.0 };
        let prev = (l + n - 1) % n;
        let next = (l + 1) % n;
        h.add_term(0.5 * c.m * s, PauliString::identity(n)).unwrap();
        h.add_term(-0.5 * c.m * s, z(&[prev, l])).unwrap();
        let x = PauliString::x_on(n, &[l]);
        h.add_term(0.5 * c.epsilon, x.clone()).unwrap();
        h.add_term(-0.5 * c.epsilon, &z(&[prev, next]) * &x).unwrap();
        h.add_term(2.0 * c.lambda_e, z(&[l])).unwrap();
    }
    h
}

fn random_couplings(rng: &mut ChaCha8Rng) -> Couplings {
    Couplings::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

fn compressed(lattice: &Lattice, c: &Couplings) -> CMatrix {
    let code = gauss_law_code(lattice);
    let e = code.encoding_isometry().unwrap();
    dense::compress_sum(&hamiltonian::physical_hamiltonian(lattice, c).unwrap(), &e).unwrap()
}

#[test]
fn chain_duality_is_exact_in_the_encoded_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lattice = Lattice::new(&[4]).unwrap();
    for _ in 0..3 {
        let c = random_couplings(&mut rng);
        let logical = dense::to_matrix(&hamiltonian::logical_hamiltonian(&lattice, &c).unwrap()).unwrap();
        let restricted = compressed(&lattice, &c);
        assert!(dense::max_abs_diff(&restricted, &logical).unwrap() < 1e-12);
        let gap = dense::spectrum_gap(&dense::eigenvalues(&restricted), &dense::eigenvalues(&logical)).unwrap();
        assert!(gap < 1e-9);
    }
}

#[test]
fn square_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lattice = Lattice::new(&[2, 2]).unwrap();
    let c = random_couplings(&mut rng);
    let logical = hamiltonian::logical_hamiltonian(&lattice, &c).unwrap();
    assert_eq!(logical.n_qubits(), 8);
    let restricted = compressed(&lattice, &c);
    let lm = dense::to_matrix(&logical).unwrap();
    assert!(dense::max_abs_diff(&restricted, &lm).unwrap() < 1e-10);
}

#[test]
fn chain_spectrum_matches_uniform_sign_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [4, 6] {
        let lattice = Lattice::new(&[n]).unwrap();
        let c = random_couplings(&mut rng);
        let ours = dense::eigenvalues(&dense::to_matrix(&hamiltonian::logical_hamiltonian(&lattice, &c).unwrap()).unwrap());
        let reference = dense::eigenvalues(&dense::to_matrix(&chain_reference(n, &c)).unwrap());
        assert!(dense::spectrum_gap(&ours, &reference).unwrap() < 1e-9, "N={n}");
    }
}

#[test]
fn chain_mass_and_electric_match_reference_exactly() {
    let lattice = Lattice::new(&[4]).unwrap();
    for (kind, c) in [
        (TermKind::Mass, Couplings::new(1.3, 0.0, 0.0, 0.0)),
        (TermKind::Electric, Couplings::new(0.0, 0.0, 0.7, 0.0)),
    ] {
        let ours = hamiltonian::logical_terms(&lattice, &c, kind).unwrap();
        assert_eq!(ours, chain_reference(4, &c), "{kind}");
    }
}

#[test]
fn chain_hop_differs_from_reference_only_by_link_signs() {
    let lattice = Lattice::new(&[4]).unwrap();
    let c = Couplings::new(0.0, 1.0, 0.0, 0.0);
    let ours = hamiltonian::logical_terms(&lattice, &c, TermKind::Hop).unwrap();
    let reference = chain_reference(4, &c);
    assert_eq!(ours.len(), reference.len());
    for (coeff, p) in reference.iter() {
        let link = p.support().into_iter().find(|&q| p.x_bit(q)).unwrap();
        let mirrored = ours.coefficient(p);
        assert!((mirrored.abs() - coeff.abs()).abs() < 1e-15, "{p}");
        let single = ours.coefficient(&PauliString::x_on(4, &[link]));
        assert!((mirrored * single).signum() == (coeff * 0.5).signum());
    }
}

#[test]
fn boson_form_equals_logical_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for dims in [&[4][..], &[2, 2]] {
        let lattice = Lattice::new(dims).unwrap();
        let c = random_couplings(&mut rng);
        let logical = hamiltonian::logical_hamiltonian(&lattice, &c).unwrap();
        let terms = to_bosonic(&logical, true).unwrap();
        let diff = dense::max_abs_diff(
            &boson_matrix(&terms, logical.n_qubits()).unwrap(),
            &dense::to_matrix(&logical).unwrap(),
        )
        .unwrap();
        assert!(diff < 1e-12, "{dims:?}: {diff}");
    }
}

#[test]
fn chain_boson_monomials() {
    let n = 4;
    let c = Couplings::new(1.0, 0.0, 0.0, 0.0);
    let mass = to_bosonic(&chain_reference(n, &c), true).unwrap();
    // 2m Σ (−1)^{l+1} N_{l−1} N_l and nothing else.
    assert_eq!(mass.len(), n);
    for t in &mass {
        assert!(t.factors.iter().all(|f| f.op == BosonOp::Number));
        let l = if t.factors[0].mode == 0 && t.factors[1].mode == n - 1 { 0 } else { t.factors[1].mode };
        let expect = if l % 2 == 0 { -2.0 } else { 2.0 };
        assert!((t.coeff - expect).abs() < 1e-14, "{t}");
    }

    let electric = to_bosonic(&chain_reference(n, &Couplings::new(0.0, 0.0, 1.0, 0.0)), true).unwrap();
    assert_eq!(electric[0].to_string(), "-8");
    assert!(electric[1..].iter().all(|t| t.coeff == 4.0 && t.factors.len() == 1));

    // ε (N_a − N_b)² (φ + φ†) = ε (N_a + N_b − 2 N_a N_b)(φ + φ†)
    let hop = to_bosonic(&chain_reference(n, &Couplings::new(0.0, 1.0, 0.0, 0.0)), true).unwrap();
    assert_eq!(hop.len(), 6 * n);
    for t in &hop {
        let numbers = t.factors.iter().filter(|f| f.op == BosonOp::Number).count();
        let expect = if numbers == 2 { -2.0 } else { 1.0 };
        assert!((t.coeff - expect).abs() < 1e-14, "{t}");
    }
}

#[test]
fn nonlocal_form_matches_under_basis_change() {
    let lattice = Lattice::new(&[3]).unwrap();
    let c = Couplings::new(0.8, -0.6, 0.45, 0.0);
    let form = nonlocal_logical_form(&lattice, &c).unwrap();
    let e_local = gauss_law_code(&lattice).encoding_isometry().unwrap();
    let e_nl = nonlocal_code(&lattice).unwrap().encoding_isometry().unwrap();
    let u = e_nl.adjoint() * &e_local;
    assert!(dense::unitarity_error(&u) < 1e-10);
    let local = dense::to_matrix(&hamiltonian::logical_hamiltonian(&lattice, &c).unwrap()).unwrap();
    let mapped = &u * local * u.adjoint();
    let diff = dense::max_abs_diff(&nonlocal_matrix(&form.terms, 3).unwrap(), &mapped).unwrap();
    assert!(diff < 1e-9, "{diff}");
}
