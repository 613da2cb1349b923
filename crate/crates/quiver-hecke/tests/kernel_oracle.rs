//! The rewriting kernel checked against the faithful polynomial representation.

use std::collections::BTreeMap;

use proptest::prelude::*;
use quiver_hecke::klr::generators::{psi_e, y_e};
use quiver_hecke::klr::{KlrElement, Kernel, Monomial};
use quiver_hecke::perm;

type Poly = BTreeMap<Vec<u32>, i64>;

fn padd(a: &mut Poly, m: Vec<u32>, c: i64) {
    if c == 0 {
        return;
    }
    let v = a.entry(m.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
        a.remove(&m);
    }
}

fn swap_vars(f: &Poly, r: usize) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in f {
        let mut m = m.clone();
        m.swap(r - 1, r);
        padd(&mut out, m, c);
    }
    out
}

fn times_linear(f: &Poly, r: usize, sign: i64) -> Poly {
    // f · sign·(y_r − y_{r+1})
    let mut out = Poly::new();
    for (m, &c) in f {
        let mut a = m.clone();
        a[r - 1] += 1;
        padd(&mut out, a, sign * c);
        let mut b = m.clone();
        b[r] += 1;
        padd(&mut out, b, -sign * c);
    }
    out
}

/// `(f − s_r f)/(y_{r+1} − y_r)`.
fn demazure(f: &Poly, r: usize) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in f {
        let (a, b) = (m[r - 1], m[r]);
        if a == b {
            continue;
        }
        let (lo, d, sign) = if a > b { (b, a - b, -1) } else { (a, b - a, 1) };
        for j in 0..d {
            let mut mm = m.clone();
            mm[r - 1] = lo + j;
            mm[r] = lo + d - 1 - j;
            padd(&mut out, mm, sign * c);
        }
    }
    out
}

/// Action of `ψ_r` on `f e_i`, returning the new idempotent and polynomial.
fn act_psi(i: &[u8], f: &Poly, r: usize, e: usize) -> (Vec<u8>, Poly) {
    let (a, b) = (i[r - 1] as i64, i[r] as i64);
    let e = e as i64;
    let mut si = i.to_vec();
    si.swap(r - 1, r);
    if a == b {
        return (i.to_vec(), demazure(f, r));
    }
    let sf = swap_vars(f, r);
    if (b - a).rem_euclid(e) == 1 {
        (si, times_linear(&sf, r, 1))
    } else {
        (si, sf)
    }
}

fn act_mono(m: &Monomial, i: &[u8], f: &Poly, e: usize) -> Option<(Vec<u8>, Poly)> {
    if m.bottom != i {
        return None;
    }
    let word = m.word();
    let mut cur = (i.to_vec(), f.clone());
    for &a in word.iter().rev() {
        cur = act_psi(&cur.0, &cur.1, a, e);
    }
    let mut out = Poly::new();
    for (mm, &c) in &cur.1 {
        let mut mm = mm.clone();
        for (k, &d) in m.dots.iter().enumerate() {
            mm[k] += d as u32;
        }
        padd(&mut out, mm, c);
    }
    Some((cur.0, out))
}

fn act(x: &KlrElement, i: &[u8], f: &Poly, e: usize) -> BTreeMap<Vec<u8>, Poly> {
    let mut out: BTreeMap<Vec<u8>, Poly> = BTreeMap::new();
    for (m, &c) in &x.terms {
        if let Some((j, g)) = act_mono(m, i, f, e) {
            let slot = out.entry(j).or_default();
            for (mm, &cc) in &g {
                padd(slot, mm.clone(), c * cc);
            }
        }
    }
    out.retain(|_, p| !p.is_empty());
    out
}

/// Apply a raw word of generators (listed left to right) by direct composition.
#[derive(Clone, Debug)]
enum Gen {
    Psi(usize),
    Y(usize),
}

fn act_raw(gens: &[Gen], i: &[u8], f: &Poly, e: usize) -> (Vec<u8>, Poly) {
    let mut cur = (i.to_vec(), f.clone());
    for g in gens.iter().rev() {
        cur = match g {
            Gen::Psi(r) => act_psi(&cur.0, &cur.1, *r, e),
            Gen::Y(k) => {
                let mut out = Poly::new();
                for (m, &c) in &cur.1 {
                    let mut m = m.clone();
                    m[k - 1] += 1;
                    padd(&mut out, m, c);
                }
                (cur.0, out)
            }
        };
    }
    cur
}

fn test_polys(n: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut one = Poly::new();
    one.insert(vec![0; n], 1);
    out.push(one);
    for k in 0..n {
        let mut p = Poly::new();
        let mut m = vec![0; n];
        m[k] = 2;
        p.insert(m, 1);
        let mut m2 = vec![0; n];
        m2[(k + 1) % n] = 1;
        p.insert(m2, 3);
        out.push(p);
    }
    let mut p = Poly::new();
    p.insert((0..n as u32).collect(), 1);
    out.push(p);
    out
}

fn kernel_product(k: &Kernel, gens: &[Gen], bottom: &[u8]) -> KlrElement {
    // Build framed generators from the bottom up.
    let mut idem = bottom.to_vec();
    let mut framed = Vec::new();
    for g in gens.iter().rev() {
        match g {
            Gen::Psi(r) => {
                framed.push(psi_e(*r, &idem).unwrap());
                idem.swap(r - 1, *r);
            }
            Gen::Y(p) => framed.push(y_e(*p, &idem).unwrap()),
        }
    }
    framed.reverse();
    let refs: Vec<&KlrElement> = framed.iter().collect();
    if refs.is_empty() {
        return KlrElement::idempotent(bottom);
    }
    k.product(&refs).unwrap()
}

#[test]
fn polynomial_representation_satisfies_relations() {
    let e = 4;
    let n = 3;
    for i in quiver_hecke::klr::all_sequences(n, e) {
        for f in test_polys(n) {
            let lhs = act_raw(&[Gen::Psi(1), Gen::Psi(2), Gen::Psi(1)], &i, &f, e);
            let rhs = act_raw(&[Gen::Psi(2), Gen::Psi(1), Gen::Psi(2)], &i, &f, e);
            let c = quiver_hecke::klr::braid_constant(&i, 1, e);
            let mut want = rhs.1.clone();
            for (m, &v) in &f {
                padd(&mut want, m.clone(), c * v);
            }
            assert_eq!(lhs.0, rhs.0);
            assert_eq!(lhs.1, want, "braid at {i:?}");
            let a = act_raw(&[Gen::Y(2), Gen::Psi(1)], &i, &f, e);
            let b = act_raw(&[Gen::Psi(1), Gen::Y(1)], &i, &f, e);
            let mut want = b.1.clone();
            if i[0] == i[1] {
                for (m, &v) in &f {
                    padd(&mut want, m.clone(), v);
                }
            }
            assert_eq!(a.1, want);
        }
    }
}

fn compare(k: &Kernel, gens: &[Gen], bottom: &[u8], e: usize) {
    let n = bottom.len();
    let x = kernel_product(k, gens, bottom);
    for f in test_polys(n) {
        let (j, g) = act_raw(gens, bottom, &f, e);
        let got = act(&x, bottom, &f, e);
        let mut want = BTreeMap::new();
        if !g.is_empty() {
            want.insert(j, g);
        }
        assert_eq!(got, want, "gens {gens:?} bottom {bottom:?}");
    }
}

fn gen_strategy(n: usize) -> impl Strategy<Value = Gen> {
    prop_oneof![
        3 => (1..n).prop_map(Gen::Psi),
        1 => (1..=n).prop_map(Gen::Y),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, .. ProptestConfig::default() })]

    #[test]
    fn normal_forms_match_polynomial_action(
        n in 2usize..=5,
        e in 3usize..=5,
        seed in any::<u64>(),
    ) {
        let mut s = seed;
        let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as usize };
        let bottom: Vec<u8> = (0..n).map(|_| (next() % e) as u8).collect();
        let len = next() % 9;
        let gens: Vec<Gen> = (0..len).map(|_| if next() % 4 == 0 { Gen::Y(1 + next() % n) } else { Gen::Psi(1 + next() % (n - 1)) }).collect();
        let k = Kernel::new(e);
        compare(&k, &gens, &bottom, e);
    }

    #[test]
    fn associativity(
        n in 2usize..=4,
        a in proptest::collection::vec(gen_strategy(4), 0..5),
        b in proptest::collection::vec(gen_strategy(4), 0..5),
        c in proptest::collection::vec(gen_strategy(4), 0..5),
        bottom in proptest::collection::vec(0u8..3, 4),
    ) {
        let clip = |v: &Vec<Gen>| -> Vec<Gen> { v.iter().filter(|g| match g { Gen::Psi(r) => *r < n, Gen::Y(p) => *p <= n }).cloned().collect() };
        let (a, b, c) = (clip(&a), clip(&b), clip(&c));
        let bottom = &bottom[..n];
        let e = 3;
        let k = Kernel::new(e);
        let xc = kernel_product(&k, &c, bottom);
        let xb = kernel_product(&k, &b, &top_of(&c, bottom));
        let xa = kernel_product(&k, &a, &top_of(&b, &top_of(&c, bottom)));
        let left = k.multiply(&k.multiply(&xa, &xb).unwrap(), &xc).unwrap();
        let right = k.multiply(&xa, &k.multiply(&xb, &xc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

fn top_of(gens: &[Gen], bottom: &[u8]) -> Vec<u8> {
    let mut i = bottom.to_vec();
    for g in gens.iter().rev() {
        if let Gen::Psi(r) = g {
            i.swap(r - 1, *r);
        }
    }
    i
}

#[test]
fn every_canonical_monomial_matches() {
    let e = 3;
    let k = Kernel::new(e);
    for n in 2..=4 {
        for pi in perm::all_permutations(n) {
            let word = perm::canonical_word(&pi);
            for bottom in quiver_hecke::klr::all_sequences(n, e) {
                let gens: Vec<Gen> = word.iter().map(|&a| Gen::Psi(a)).collect();
                compare(&k, &gens, &bottom, e);
                let x = kernel_product(&k, &gens, &bottom);
                assert_eq!(x.len(), 1);
            }
        }
    }
}
