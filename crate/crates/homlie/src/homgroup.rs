//! Finite Hom-groups as Cayley tables.
//!
//! A Hom-group (G, ⋄, e_Φ, Φ) has a bijective twist Φ and satisfies
//!
//! * (i) Φ(x⋄y) = Φ(x)⋄Φ(y),
//! * (ii) Φ(x)⋄(y⋄z) = (x⋄y)⋄Φ(z) (Hom-associativity),
//! * (iii) x⋄e = e⋄x = Φ(x) for a unique unit e,
//! * (iv) every x has an inverse: x⋄y = y⋄x = e.
//!
//! Twisting a finite group table by one of its automorphisms (a⋄b = φ(a·b))
//! always produces one. All verification here is exhaustive over tuples,
//! with lexicographically-first witnesses; the cubic sweeps are chunked
//! across scoped threads and merged so the witness stays deterministic.

use crate::error::Error;

#[derive(Clone, Debug)]
pub struct FiniteHomGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    twist: Vec<usize>,
    twist_inv: Vec<usize>,
    unit: usize,
}

/// First failing tuple of one law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FhgWitness {
    pub law: &'static str,
    pub tuple: Vec<usize>,
}

/// Exhaustive verdicts: the four definition axioms, then the derived
/// properties (twist fixes the unit, inverses are unique, and
/// (x⋄y)⁻¹ = y⁻¹⋄x⁻¹).
#[derive(Clone, Debug)]
pub struct FhgReport {
    pub twist_multiplicative: bool,
    pub hom_associative: bool,
    pub unit_law: bool,
    pub has_inverses: bool,
    pub twist_fixes_unit: bool,
    pub unique_inverses: bool,
    pub inverse_antihomomorphism: bool,
    pub witnesses: Vec<FhgWitness>,
}

impl FhgReport {
    /// Axioms (i)–(iv).
    pub fn definition_pass(&self) -> bool {
        self.twist_multiplicative && self.hom_associative && self.unit_law && self.has_inverses
    }

    /// Axioms plus the derived properties.
    pub fn pass(&self) -> bool {
        self.definition_pass()
            && self.twist_fixes_unit
            && self.unique_inverses
            && self.inverse_antihomomorphism
    }
}

/// Verdicts for maps between Hom-groups.
#[derive(Clone, Debug)]
pub struct FhgHomReport {
    pub unit_preserved: bool,
    /// f(e)=e and Ψf(x⋄y) = fΦ(x) ⋄ fΦ(y).
    pub weak: bool,
    /// f(e)=e and f(x⋄y) = f(x)⋄f(y); implies `weak` and `twist_commutes`.
    pub homomorphism: bool,
    /// Ψ∘f = f∘Φ.
    pub twist_commutes: bool,
    pub witness: Option<FhgWitness>,
}

/// Verdicts for the twisted conjugation action.
#[derive(Clone, Debug)]
pub struct FhgActionReport {
    /// Ãd(e, x) = Φ(x).
    pub unit_action: bool,
    /// Ãd(a⋄b, x) = Ãd(Φ(a), Φ⁻¹(Ãd(Φ(b), x))).
    pub composition: bool,
    pub witnesses: Vec<FhgWitness>,
    pub pass: bool,
}

/// Lexicographically-first (a, b, c) failing `ok`, scanning a×b×c
/// exhaustively. The leading index is chunked across scoped threads (capped
/// by [`crate::thread_cap`]); merging in chunk order keeps the winner
/// deterministic.
fn first_failing_triple<F>(m: usize, ok: F) -> Option<(usize, usize, usize)>
where
    F: Fn(usize, usize, usize) -> bool + Sync,
{
    let scan = |range: std::ops::Range<usize>| -> Option<(usize, usize, usize)> {
        for a in range {
            for b in 0..m {
                for c in 0..m {
                    if !ok(a, b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    };
    let threads = crate::thread_cap().min(m);
    if threads <= 1 || m < 8 {
        return scan(0..m);
    }
    let chunk = m.div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(m);
                let scan = &scan;
                s.spawn(move || scan(lo..hi))
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("sweep thread"))
            .next()
    })
}

fn validate_permutation(p: &[usize], m: usize, what: &str) -> Result<Vec<usize>, Error> {
    if p.len() != m {
        return Err(Error::schema(format!("{what} must list all {m} elements")));
    }
    let mut inv = vec![usize::MAX; m];
    for (i, &pi) in p.iter().enumerate() {
        if pi >= m {
            return Err(Error::schema(format!("{what} entry {pi} out of range")));
        }
        if inv[pi] != usize::MAX {
            return Err(Error::schema(format!("{what} is not a bijection")));
        }
        inv[pi] = i;
    }
    Ok(inv)
}

fn validate_table(table: &[Vec<usize>]) -> Result<usize, Error> {
    let m = table.len();
    if m == 0 {
        return Err(Error::schema("empty product table".to_string()));
    }
    for row in table {
        if row.len() != m {
            return Err(Error::schema("product table is not square".to_string()));
        }
        for &v in row {
            if v >= m {
                return Err(Error::schema(format!("table entry {v} out of range")));
            }
        }
    }
    Ok(m)
}

impl FiniteHomGroup {
    /// Build from raw data, enforcing ranges, twist bijectivity and the
    /// Hom-unit law (axiom (iii)) for the designated unit. The remaining
    /// axioms stay checkable verdicts via [`FiniteHomGroup::check_axioms`].
    pub fn new(table: Vec<Vec<usize>>, twist: Vec<usize>, unit: usize) -> Result<Self, Error> {
        let m = validate_table(&table)?;
        let twist_inv = validate_permutation(&twist, m, "twist")?;
        if unit >= m {
            return Err(Error::schema(format!("unit {unit} out of range")));
        }
        for x in 0..m {
            if table[x][unit] != twist[x] || table[unit][x] != twist[x] {
                return Err(Error::NotAGroup(format!(
                    "element {unit} fails the Hom-unit law at {x}"
                )));
            }
        }
        Ok(FiniteHomGroup {
            order: m,
            table,
            twist,
            twist_inv,
            unit,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn twist(&self) -> &[usize] {
        &self.twist
    }

    pub fn prod(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn tw(&self, a: usize) -> usize {
        self.twist[a]
    }

    pub fn tw_inv(&self, a: usize) -> usize {
        self.twist_inv[a]
    }

    /// The first y with x⋄y = y⋄x = e, if any.
    pub fn inverse_of(&self, x: usize) -> Option<usize> {
        (0..self.order).find(|&y| self.prod(x, y) == self.unit && self.prod(y, x) == self.unit)
    }

    /// Exhaustively verify the definition axioms and the derived properties.
    pub fn check_axioms(&self) -> FhgReport {
        let m = self.order;
        let mut witnesses = Vec::new();

        let mult_witness = first_failing_triple(m, |x, y, c| {
            c != 0 || self.tw(self.prod(x, y)) == self.prod(self.tw(x), self.tw(y))
        });
        let twist_multiplicative = mult_witness.is_none();
        if let Some((x, y, _)) = mult_witness {
            witnesses.push(FhgWitness {
                law: "twist_multiplicative",
                tuple: vec![x, y],
            });
        }

        let assoc_witness = first_failing_triple(m, |x, y, z| {
            self.prod(self.tw(x), self.prod(y, z)) == self.prod(self.prod(x, y), self.tw(z))
        });
        let hom_associative = assoc_witness.is_none();
        if let Some((x, y, z)) = assoc_witness {
            witnesses.push(FhgWitness {
                law: "hom_associative",
                tuple: vec![x, y, z],
            });
        }

        // the designated unit works by construction; it must also be unique
        let other_units: Vec<usize> = (0..m)
            .filter(|&u| {
                u != self.unit
                    && (0..m).all(|x| self.prod(x, u) == self.tw(x) && self.prod(u, x) == self.tw(x))
            })
            .collect();
        let unit_law = other_units.is_empty();
        if let Some(&u) = other_units.first() {
            witnesses.push(FhgWitness {
                law: "unit_unique",
                tuple: vec![u],
            });
        }

        let inverse_counts: Vec<usize> = (0..m)
            .map(|x| {
                (0..m)
                    .filter(|&y| self.prod(x, y) == self.unit && self.prod(y, x) == self.unit)
                    .count()
            })
            .collect();
        let has_inverses = inverse_counts.iter().all(|&c| c >= 1);
        if let Some(x) = inverse_counts.iter().position(|&c| c == 0) {
            witnesses.push(FhgWitness {
                law: "has_inverses",
                tuple: vec![x],
            });
        }
        let unique_inverses = inverse_counts.iter().all(|&c| c == 1);
        if has_inverses {
            if let Some(x) = inverse_counts.iter().position(|&c| c > 1) {
                witnesses.push(FhgWitness {
                    law: "unique_inverses",
                    tuple: vec![x],
                });
            }
        }

        let twist_fixes_unit = self.tw(self.unit) == self.unit;
        if !twist_fixes_unit {
            witnesses.push(FhgWitness {
                law: "twist_fixes_unit",
                tuple: vec![self.unit],
            });
        }

        let mut inverse_antihomomorphism = has_inverses;
        if has_inverses {
            let inv: Vec<usize> = (0..m).map(|x| self.inverse_of(x).expect("checked")).collect();
            let w = first_failing_triple(m, |x, y, c| {
                c != 0 || inv[self.prod(x, y)] == self.prod(inv[y], inv[x])
            });
            inverse_antihomomorphism = w.is_none();
            if let Some((x, y, _)) = w {
                witnesses.push(FhgWitness {
                    law: "inverse_antihomomorphism",
                    tuple: vec![x, y],
                });
            }
        }

        FhgReport {
            twist_multiplicative,
            hom_associative,
            unit_law,
            has_inverses,
            twist_fixes_unit,
            unique_inverses,
            inverse_antihomomorphism,
            witnesses,
        }
    }

    /// Twisted conjugation Ãd(a, b) = Φ⁻¹(a⋄b) ⋄ a⁻¹.
    pub fn tilde_ad(&self, a: usize, b: usize) -> Result<usize, Error> {
        let a_inv = self
            .inverse_of(a)
            .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
        Ok(self.prod(self.tw_inv(self.prod(a, b)), a_inv))
    }

    /// Exhaustively verify that Ãd is an action: the unit acts as Φ and
    /// Ãd(a⋄b, x) = Ãd(Φ(a), Φ⁻¹(Ãd(Φ(b), x))).
    pub fn tilde_ad_check(&self) -> Result<FhgActionReport, Error> {
        let m = self.order;
        let mut witnesses = Vec::new();
        let ad = {
            let mut t = vec![vec![0usize; m]; m];
            for (a, row) in t.iter_mut().enumerate() {
                for (b, slot) in row.iter_mut().enumerate() {
                    *slot = self.tilde_ad(a, b)?;
                }
            }
            t
        };
        let unit_w = (0..m).find(|&x| ad[self.unit][x] != self.tw(x));
        let unit_action = unit_w.is_none();
        if let Some(x) = unit_w {
            witnesses.push(FhgWitness {
                law: "unit_acts_as_twist",
                tuple: vec![x],
            });
        }
        let comp_w = first_failing_triple(m, |a, b, x| {
            ad[self.prod(a, b)][x] == ad[self.tw(a)][self.tw_inv(ad[self.tw(b)][x])]
        });
        let composition = comp_w.is_none();
        if let Some((a, b, x)) = comp_w {
            witnesses.push(FhgWitness {
                law: "action_composition",
                tuple: vec![a, b, x],
            });
        }
        Ok(FhgActionReport {
            unit_action,
            composition,
            pass: unit_action && composition,
            witnesses,
        })
    }
}

/// Verify an ordinary group table exhaustively (closure is structural;
/// two-sided unit, associativity, inverses) and return the unit.
pub fn check_group_table(table: &[Vec<usize>]) -> Result<usize, Error> {
    let m = validate_table(table)?;
    let unit = (0..m)
        .find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::NotAGroup("no two-sided unit".to_string()))?;
    if let Some((a, b, c)) =
        first_failing_triple(m, |a, b, c| table[a][table[b][c]] == table[table[a][b]][c])
    {
        return Err(Error::NotAGroup(format!(
            "associativity fails at ({a}, {b}, {c})"
        )));
    }
    for x in 0..m {
        if !(0..m).any(|y| table[x][y] == unit && table[y][x] == unit) {
            return Err(Error::NotAGroup(format!("element {x} has no inverse")));
        }
    }
    Ok(unit)
}

/// Twist a verified group table by one of its automorphisms: the Hom-product
/// is a⋄b = φ(a·b), the Hom-unit is the group unit, the twist is φ.
pub fn from_automorphism(table: &[Vec<usize>], phi: &[usize]) -> Result<FiniteHomGroup, Error> {
    let unit = check_group_table(table)?;
    let m = table.len();
    validate_permutation(phi, m, "twist")?;
    for i in 0..m {
        for j in 0..m {
            if phi[table[i][j]] != table[phi[i]][phi[j]] {
                return Err(Error::NotAutomorphism { i, j });
            }
        }
    }
    let twisted: Vec<Vec<usize>> = table
        .iter()
        .map(|row| row.iter().map(|&v| phi[v]).collect())
        .collect();
    FiniteHomGroup::new(twisted, phi.to_vec(), unit)
}

/// Exhaustive weak/strong homomorphism verdicts for a total map f: G → H.
pub fn check_weak_hom(
    f: &[usize],
    g: &FiniteHomGroup,
    h: &FiniteHomGroup,
) -> Result<FhgHomReport, Error> {
    if f.len() != g.order() {
        return Err(Error::dims(format!(
            "map must be total on {} elements",
            g.order()
        )));
    }
    if let Some(&v) = f.iter().find(|&&v| v >= h.order()) {
        return Err(Error::schema(format!("map value {v} out of range")));
    }
    let mut witness = None;
    let unit_preserved = f[g.unit()] == h.unit();
    if !unit_preserved {
        witness = Some(FhgWitness {
            law: "unit_preserved",
            tuple: vec![g.unit()],
        });
    }
    let weak_w = first_failing_triple(g.order(), |x, y, c| {
        c != 0 || h.tw(f[g.prod(x, y)]) == h.prod(f[g.tw(x)], f[g.tw(y)])
    });
    if witness.is_none() {
        if let Some((x, y, _)) = weak_w {
            witness = Some(FhgWitness {
                law: "weak_product_law",
                tuple: vec![x, y],
            });
        }
    }
    let strong_w = first_failing_triple(g.order(), |x, y, c| {
        c != 0 || f[g.prod(x, y)] == h.prod(f[x], f[y])
    });
    let twist_commutes = (0..g.order()).all(|x| h.tw(f[x]) == f[g.tw(x)]);
    Ok(FhgHomReport {
        unit_preserved,
        weak: unit_preserved && weak_w.is_none(),
        homomorphism: unit_preserved && strong_w.is_none(),
        twist_commutes,
        witness,
    })
}

/// Cayley table of ℤ/n.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Automorphisms of ℤ/n: x ↦ kx for every unit k.
pub fn cyclic_automorphisms(n: usize) -> Vec<Vec<usize>> {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n.max(1))
        .filter(|&k| k <= n && gcd(k, n) == 1)
        .map(|k| (0..n).map(|x| (k * x) % n).collect())
        .collect()
}

/// Cayley table of S₃, elements enumerated as the six permutations of
/// {0,1,2} in lexicographic one-line order, composed as (p·q)(x) = p(q(x)).
pub fn symmetric3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: &[usize; 3]| perms.iter().position(|q| q == p).expect("permutation");
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index(&[p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect()
}

/// All inner automorphisms x ↦ g·x·g⁻¹ of a group table, deduplicated.
pub fn inner_automorphisms(table: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, Error> {
    let unit = check_group_table(table)?;
    let m = table.len();
    let inv = |x: usize| {
        (0..m)
            .find(|&y| table[x][y] == unit && table[y][x] == unit)
            .expect("group table has inverses")
    };
    let mut out: Vec<Vec<usize>> = Vec::new();
    for gidx in 0..m {
        let gi = inv(gidx);
        let conj: Vec<usize> = (0..m).map(|x| table[table[gidx][x]][gi]).collect();
        if !out.contains(&conj) {
            out.push(conj);
        }
    }
    Ok(out)
}

/// Cayley table of D₄ on 8 elements rⁱsʲ indexed i + 4j:
/// (i,j)·(k,l) = (i + (−1)ʲk mod 4, j ⊕ l).
pub fn dihedral4_table() -> Vec<Vec<usize>> {
    let idx = |i: usize, j: usize| (i % 4) + 4 * (j % 2);
    let mut t = vec![vec![0usize; 8]; 8];
    for i in 0..4 {
        for j in 0..2 {
            for k in 0..4 {
                for l in 0..2 {
                    let rot = if j == 0 { (i + k) % 4 } else { (i + 4 - k) % 4 };
                    t[idx(i, j)][idx(k, l)] = idx(rot, (j + l) % 2);
                }
            }
        }
    }
    t
}

/// The outer automorphism of D₄ fixing r and sending s ↦ rs:
/// (i,j) ↦ (i + j mod 4, j).
pub fn dihedral4_outer_automorphism() -> Vec<usize> {
    let idx = |i: usize, j: usize| (i % 4) + 4 * (j % 2);
    let mut p = vec![0usize; 8];
    for i in 0..4 {
        for j in 0..2 {
            p[idx(i, j)] = idx(i + j, j);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_twisted() -> FiniteHomGroup {
        from_automorphism(&cyclic_table(4), &[0, 3, 2, 1]).unwrap()
    }

    #[test]
    fn z4_with_inversion_twist_has_the_expected_table() {
        let h = z4_twisted();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(h.prod(a, b), (8 - a - b) % 4, "a⋄b = −(a+b) mod 4");
            }
        }
        assert!(h.check_axioms().pass());
    }

    #[test]
    fn identity_twist_gives_back_the_group() {
        let h = from_automorphism(&cyclic_table(3), &[0, 1, 2]).unwrap();
        assert_eq!(h.table(), cyclic_table(3).as_slice());
        assert!(h.check_axioms().pass());
    }

    #[test]
    fn s3_twisted_by_a_conjugation_passes_exhaustively() {
        let table = symmetric3_table();
        for phi in inner_automorphisms(&table).unwrap() {
            let h = from_automorphism(&table, &phi).unwrap();
            assert!(h.check_axioms().pass());
            assert!(h.tilde_ad_check().unwrap().pass);
        }
    }

    #[test]
    fn d4_outer_twist_is_an_automorphism_and_passes() {
        let h = from_automorphism(&dihedral4_table(), &dihedral4_outer_automorphism()).unwrap();
        let report = h.check_axioms();
        assert!(report.pass(), "{report:?}");
        assert!(h.tilde_ad_check().unwrap().pass);
    }

    #[test]
    fn non_automorphism_twist_is_rejected_at_construction() {
        // swapping 0 and 1 is not an automorphism of ℤ/4
        assert!(matches!(
            from_automorphism(&cyclic_table(4), &[1, 0, 2, 3]),
            Err(Error::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn broken_twist_fails_axiom_i_with_lex_first_witness() {
        // feed the twisted table directly so only the load-time unit law runs
        let phi = vec![1usize, 0, 2, 3];
        let table: Vec<Vec<usize>> = cyclic_table(4)
            .into_iter()
            .map(|row| row.into_iter().map(|v| phi[v]).collect())
            .collect();
        let h = FiniteHomGroup::new(table, phi, 0).unwrap();
        let report = h.check_axioms();
        assert!(!report.twist_multiplicative);
        let w = report
            .witnesses
            .iter()
            .find(|w| w.law == "twist_multiplicative")
            .unwrap();
        assert_eq!(w.tuple, vec![0, 0]);
        // inverses exist (x⁻¹ = 1−x) but the antihomomorphism law breaks too
        assert!(report.has_inverses && report.unique_inverses);
        assert!(!report.inverse_antihomomorphism);
    }

    #[test]
    fn unit_law_violations_are_rejected_at_load() {
        // ℤ/4 table with twist x ↦ 3x but wrong designated unit
        let h = FiniteHomGroup::new(
            z4_twisted().table().to_vec(),
            vec![0, 3, 2, 1],
            1,
        );
        assert!(matches!(h, Err(Error::NotAGroup(_))));
    }

    #[test]
    fn group_table_validation_catches_failures() {
        assert!(matches!(
            check_group_table(&[vec![0, 1], vec![0, 1]]),
            Err(Error::NotAGroup(_))
        ));
        // a quasigroup without associativity: build a 5-element Latin square
        let latin: Vec<Vec<usize>> = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            check_group_table(&latin),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn tilde_ad_on_twisted_z4_sends_everything_to_the_twist() {
        let h = z4_twisted();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(h.tilde_ad(a, b).unwrap(), h.tw(b));
            }
        }
        assert!(h.tilde_ad_check().unwrap().pass);
    }

    #[test]
    fn twist_map_is_a_homomorphism_to_itself() {
        let h = z4_twisted();
        let f: Vec<usize> = h.twist().to_vec();
        let rep = check_weak_hom(&f, &h, &h).unwrap();
        assert!(rep.unit_preserved && rep.weak && rep.homomorphism && rep.twist_commutes);
    }

    #[test]
    fn constant_to_unit_map_is_weak() {
        let h = z4_twisted();
        let f = vec![h.unit(); 4];
        let rep = check_weak_hom(&f, &h, &h).unwrap();
        assert!(rep.weak);
    }

    #[test]
    fn non_unit_preserving_map_fails_with_witness() {
        let h = z4_twisted();
        let f = vec![1usize, 1, 1, 1];
        let rep = check_weak_hom(&f, &h, &h).unwrap();
        assert!(!rep.weak && !rep.homomorphism);
        assert_eq!(rep.witness.unwrap().law, "unit_preserved");
    }

    #[test]
    fn sweeps_are_deterministic_across_thread_counts() {
        // the lexicographically first associativity failure must not depend
        // on chunking; compare a forced-serial scan with the threaded one
        let phi = vec![1usize, 0, 2, 3];
        let table: Vec<Vec<usize>> = cyclic_table(4)
            .into_iter()
            .map(|row| row.into_iter().map(|v| phi[v]).collect())
            .collect();
        let h = FiniteHomGroup::new(table, phi, 0).unwrap();
        let w1 = h.check_axioms();
        let w2 = h.check_axioms();
        assert_eq!(
            w1.witnesses.iter().map(|w| &w.tuple).collect::<Vec<_>>(),
            w2.witnesses.iter().map(|w| &w.tuple).collect::<Vec<_>>()
        );
    }
}
