//! Counting identities behind Schur-Weyl duality for `G ≀ S_n` and the
//! polynomial representations `R^d_λ`: dimensions of homogeneous polynomial
//! functions, `dim R^d_λ = ∏_γ s_{λ(γ)}(1^d)`, and the sum-of-squares and
//! total-dimension identities.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{multiset_number, partition_maps, schur_eval_ones, PartitionMap};
use crate::par::prelude::*;
use crate::wreath::{character_label_names, irreducible_dim, wreath_character_table, FiniteGroup};

/// `dim O^n = multiset(d² |G^ab|, n)`.
pub fn dim_poly_fns(g: &FiniteGroup, d: usize, n: usize) -> BigUint {
    multiset_number((d * d * g.abelianization_order()) as u64, n as u64)
}

/// `dim R^d_λ = ∏_γ s_{λ(γ)}(1^d)`.
pub fn dim_r(lambda: &PartitionMap, d: usize) -> BigUint {
    lambda.parts().iter().map(|p| schur_eval_ones(p, d)).product()
}

/// Whether some `λ(γ)` has more than `d` rows.
pub fn exceeds_rows(lambda: &PartitionMap, d: usize) -> bool {
    lambda.parts().iter().any(|p| p.len() > d)
}

/// Both sides of an exact identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityVerdict {
    fn new(lhs: BigUint, rhs: BigUint) -> Self {
        IdentityVerdict {
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

fn require_abelian(g: &FiniteGroup) -> Result<()> {
    if g.is_abelian() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{} is not abelian", g.name())))
    }
}

/// `Σ_λ (dim R^d_λ)² = multiset(d² |G|, n)` over `λ ∈ P_n(G^⋆)`.
pub fn check_sum_of_squares(g: &FiniteGroup, n: usize, d: usize) -> Result<IdentityVerdict> {
    require_abelian(g)?;
    let labels = partition_maps(n, &character_label_names(g)?);
    let lhs: BigUint = labels.par_iter().map(|l| dim_r(l, d).pow(2)).sum();
    let rhs = multiset_number((d * d * g.order()) as u64, n as u64);
    Ok(IdentityVerdict::new(lhs, rhs))
}

/// Where the degrees `dim X_λ` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimSource {
    CharacterTable,
    HookFormula,
}

/// Degrees of the irreducibles of `G ≀ S_n`, read off the character table
/// when its order fits `budget` and from the hook formula otherwise.
pub fn irreducible_dims(g: &FiniteGroup, n: usize, budget: usize) -> Result<(Vec<(PartitionMap, BigUint)>, DimSource)> {
    require_abelian(g)?;
    match wreath_character_table(g, n, budget) {
        Ok(t) => Ok((
            t.irreducible_labels.iter().cloned().zip(t.dims().into_iter().map(BigUint::from)).collect(),
            DimSource::CharacterTable,
        )),
        Err(Error::BudgetExceeded { .. }) => {
            let labels = partition_maps(n, &character_label_names(g)?);
            let dims = labels
                .into_iter()
                .map(|l| {
                    let d = irreducible_dim(&l).to_biguint().expect("non-negative");
                    (l, d)
                })
                .collect();
            Ok((dims, DimSource::HookFormula))
        }
        Err(e) => Err(e),
    }
}

/// `(d |G|)^n = Σ_λ dim X_λ · dim R^d_λ`.
pub fn check_total_dimension(g: &FiniteGroup, n: usize, d: usize, budget: usize) -> Result<IdentityVerdict> {
    let (dims, _) = irreducible_dims(g, n, budget)?;
    let lhs = BigUint::from(d * g.order()).pow(n as u32);
    let rhs: BigUint = dims.iter().map(|(l, x)| x * dim_r(l, d)).sum();
    Ok(IdentityVerdict::new(lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurWeylRow {
    pub label: PartitionMap,
    pub dim_x: String,
    pub dim_r: String,
    pub kernel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurWeylReport {
    pub group: String,
    pub n: usize,
    pub d: usize,
    pub dim_poly_fns: String,
    pub dims_source: DimSource,
    pub rows: Vec<SchurWeylRow>,
    pub sum_of_squares: IdentityVerdict,
    pub total_dimension: IdentityVerdict,
    /// `n ≤ d` implies no `R^d_λ` vanishes (vacuous when `n > d`).
    pub no_kernel_when_n_le_d: bool,
    /// The non-zero `R^d_λ` number `|P_n(G^⋆)|` minus the kernel count, and
    /// vanishing happens exactly when some `λ(γ)` has more than `d` rows.
    pub kernel_count_consistent: bool,
    pub pass: bool,
}

pub fn schur_weyl_report(g: &FiniteGroup, n: usize, d: usize, budget: usize) -> Result<SchurWeylReport> {
    let (dims, dims_source) = irreducible_dims(g, n, budget)?;
    let rows: Vec<SchurWeylRow> = dims
        .iter()
        .map(|(l, x)| {
            let r = dim_r(l, d);
            SchurWeylRow {
                label: l.clone(),
                dim_x: x.to_string(),
                dim_r: r.to_string(),
                kernel: r.is_zero(),
            }
        })
        .collect();
    let sum_of_squares = check_sum_of_squares(g, n, d)?;
    let total_dimension = check_total_dimension(g, n, d, budget)?;
    let kernels = rows.iter().filter(|r| r.kernel).count();
    let nonzero = rows.iter().filter(|r| !r.kernel).count();
    let no_kernel_when_n_le_d = n > d || kernels == 0;
    let kernel_count_consistent =
        nonzero == rows.len() - kernels && rows.iter().all(|r| r.kernel == exceeds_rows(&r.label, d));
    let pass = sum_of_squares.pass && total_dimension.pass && no_kernel_when_n_le_d && kernel_count_consistent;
    Ok(SchurWeylReport {
        group: g.name().to_string(),
        n,
        d,
        dim_poly_fns: dim_poly_fns(g, d, n).to_string(),
        dims_source,
        rows,
        sum_of_squares,
        total_dimension,
        no_kernel_when_n_le_d,
        kernel_count_consistent,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Partition;
    use crate::wreath::WREATH_BUDGET;

    fn trivial_label(p: &[usize]) -> PartitionMap {
        PartitionMap::new(vec!["γ0".into()], vec![Partition::new(p.to_vec())])
    }

    #[test]
    fn polynomial_function_counts() {
        let one = FiniteGroup::trivial();
        assert_eq!(dim_poly_fns(&one, 1, 2), BigUint::from(1u32));
        assert_eq!(dim_poly_fns(&one, 2, 2), BigUint::from(10u32));
        assert_eq!(dim_poly_fns(&FiniteGroup::cyclic(2), 1, 1), BigUint::from(2u32));
        assert_eq!(dim_poly_fns(&FiniteGroup::symmetric(3), 1, 1), BigUint::from(2u32));
        for n in 0..6 {
            assert_eq!(dim_poly_fns(&one, 1, n), BigUint::from(1u32));
        }
    }

    #[test]
    fn r_dimensions() {
        assert_eq!(dim_r(&trivial_label(&[2]), 2), BigUint::from(3u32));
        assert_eq!(dim_r(&trivial_label(&[1, 1]), 1), BigUint::zero());
        let names = vec!["γ0".to_string(), "γ1".to_string()];
        let mixed = PartitionMap::new(names, vec![Partition::new(vec![1]), Partition::new(vec![1])]);
        assert_eq!(dim_r(&mixed, 1), BigUint::from(1u32));
    }

    #[test]
    fn identities_over_the_tested_range() {
        let groups = [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::klein(),
        ];
        for g in &groups {
            for n in 0..=4 {
                for d in 1..=3 {
                    assert!(check_sum_of_squares(g, n, d).unwrap().pass, "{} {n} {d}", g.name());
                    assert!(check_total_dimension(g, n, d, WREATH_BUDGET).unwrap().pass, "{} {n} {d}", g.name());
                }
            }
        }
        let v = check_sum_of_squares(&FiniteGroup::cyclic(3), 2, 2).unwrap();
        assert_eq!(v.rhs, "78");
    }

    #[test]
    fn kernel_flags() {
        let r = schur_weyl_report(&FiniteGroup::trivial(), 2, 1, WREATH_BUDGET).unwrap();
        let flagged: Vec<String> = r.rows.iter().filter(|x| x.kernel).map(|x| x.label.to_string()).collect();
        assert_eq!(flagged, vec![trivial_label(&[1, 1]).to_string()]);
        assert!(r.pass);
        let r = schur_weyl_report(&FiniteGroup::trivial(), 2, 2, WREATH_BUDGET).unwrap();
        assert!(r.rows.iter().all(|x| !x.kernel) && r.pass);
        let r = schur_weyl_report(&FiniteGroup::cyclic(2), 3, 1, WREATH_BUDGET).unwrap();
        assert!(r.rows.iter().all(|x| x.kernel == x.label.parts().iter().any(|p| p.len() >= 2)));
        assert!(r.pass);
    }

    #[test]
    fn monotone_in_d() {
        for lambda in partition_maps(4, &["γ0".to_string(), "γ1".to_string()]) {
            for d in 1..4 {
                assert!(dim_r(&lambda, d) <= dim_r(&lambda, d + 1));
            }
        }
    }
}
