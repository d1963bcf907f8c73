use num_traits::{One, Zero};
use proptest::prelude::*;

use hallgebra::exactmath::Rat;
use hallgebra::waldhausen::{hecke_algebra, hecke_module, DoubleCoset};
use hallgebra::wreath::FiniteGroup;
use hallgebra::DEFAULT_BUDGET;

/// `(f ∗ v)(x) = (1/|H|) Σ_y f(y) v(y⁻¹ x)`.
fn convolve(g: &FiniteGroup, h: usize, f: &[Rat], v: &[Rat]) -> Vec<Rat> {
    g.elements()
        .map(|x| {
            let s: Rat = g.elements().map(|y| &f[y as usize] * &v[g.mul(g.inv(y), x) as usize]).sum();
            s / Rat::from_integer((h as i64).into())
        })
        .collect()
}

fn expand(g: &FiniteGroup, cosets: &[DoubleCoset], coeffs: &[Rat]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); g.order()];
    for (c, a) in cosets.iter().zip(coeffs) {
        for &x in &c.elements {
            v[x as usize] += a;
        }
    }
    v
}

fn indicator(g: &FiniteGroup, c: &DoubleCoset) -> Vec<Rat> {
    expand(g, std::slice::from_ref(c), &[Rat::one()])
}

fn group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(vec!["sym:3", "cyclic:6", "dihedral:4", "klein"])
        .prop_map(|s| FiniteGroup::parse(s).unwrap())
}

fn subgroup(g: &FiniteGroup, gens: &[u32]) -> Vec<u32> {
    let list: Vec<String> = gens.iter().map(|x| (x % g.order() as u32).to_string()).collect();
    g.parse_subgroup(&format!("gen:{}", list.join(","))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn algebra_is_convolution(g in group(), gens in prop::collection::vec(any::<u32>(), 0..3)) {
        let h = subgroup(&g, &gens);
        let t = hecke_algebra(&g, &h, DEFAULT_BUDGET).unwrap();
        for (i, ci) in t.cosets.iter().enumerate() {
            for (j, cj) in t.cosets.iter().enumerate() {
                let oracle = convolve(&g, h.len(), &indicator(&g, ci), &indicator(&g, cj));
                prop_assert_eq!(expand(&g, &t.cosets, &t.constants[i][j]), oracle);
            }
        }
        prop_assert!(t.is_associative() && t.is_unital() && t.is_integral());
    }

    #[test]
    fn module_is_convolution(
        g in group(),
        hg in prop::collection::vec(any::<u32>(), 0..2),
        pg in prop::collection::vec(any::<u32>(), 0..3),
    ) {
        let (h, p) = (subgroup(&g, &hg), subgroup(&g, &pg));
        let m = hecke_module(&g, &h, &p, DEFAULT_BUDGET).unwrap();
        for (i, ci) in m.algebra.cosets.iter().enumerate() {
            for (a, ca) in m.cosets.iter().enumerate() {
                let oracle = convolve(&g, h.len(), &indicator(&g, ci), &indicator(&g, ca));
                prop_assert_eq!(expand(&g, &m.cosets, &m.action[i][a]), oracle);
            }
        }
        prop_assert!(m.is_associative() && m.is_unital());
    }
}
