//! Linear algebra over the two-element field on bitmask vectors.
//!
//! Vectors live in `F_2^n` for `n <= 16`, encoded as `u16` with bit `i`
//! holding coordinate `i`. Subspaces are kept in reduced row-echelon form,
//! so equal subspaces compare and hash equal.

/// The all-ones vector, spanning the one-dimensional diagonal subspace.
pub(crate) fn all_ones(n: usize) -> u16 {
    assert!(n >= 1 && n <= 16);
    if n == 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

/// A subspace of `F_2^n` as a reduced row-echelon basis, rows descending.
///
/// Invariant: pivots (top set bits) are distinct across rows and cleared
/// from every other row, which makes the representation canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) struct Subspace {
    rows: Vec<u16>,
}

impl Subspace {
    pub(crate) fn zero() -> Subspace {
        Subspace { rows: Vec::new() }
    }

    pub(crate) fn from_vectors(vs: impl IntoIterator<Item = u16>) -> Subspace {
        let mut s = Subspace::zero();
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Add a vector to the span; false iff it was already in the span.
    pub(crate) fn insert(&mut self, mut v: u16) -> bool {
        for &row in &self.rows {
            if v & pivot_bit(row) != 0 {
                v ^= row;
            }
        }
        if v == 0 {
            return false;
        }
        let p = pivot_bit(v);
        for row in &mut self.rows {
            if *row & p != 0 {
                *row ^= v;
            }
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub(crate) fn contains(&self, mut v: u16) -> bool {
        for &row in &self.rows {
            if v & pivot_bit(row) != 0 {
                v ^= row;
            }
        }
        v == 0
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn basis(&self) -> &[u16] {
        &self.rows
    }

    pub(crate) fn join(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for &row in &other.rows {
            s.insert(row);
        }
        s
    }

    /// All `2^dim` member vectors, sorted.
    pub(crate) fn elements(&self) -> Vec<u16> {
        let mut out = vec![0u16];
        for &row in &self.rows {
            let prev = out.clone();
            out.extend(prev.into_iter().map(|v| v ^ row));
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn is_invariant(&self, gens: &[LinMap]) -> bool {
        self.rows.iter().all(|&r| gens.iter().all(|g| self.contains(g.apply(r))))
    }
}

fn pivot_bit(v: u16) -> u16 {
    debug_assert!(v != 0);
    1u16 << (15 - v.leading_zeros() as u16)
}

/// A linear map `F_2^n -> F_2^n`, stored as the images of the unit vectors.
#[derive(Clone, Debug)]
pub(crate) struct LinMap {
    cols: Vec<u16>,
}

impl LinMap {
    pub(crate) fn new(cols: Vec<u16>) -> LinMap {
        LinMap { cols }
    }

    /// The coordinate permutation `e_i -> e_{perm[i]}`.
    pub(crate) fn from_perm(perm: &[usize]) -> LinMap {
        LinMap { cols: perm.iter().map(|&j| 1u16 << j).collect() }
    }

    pub(crate) fn apply(&self, v: u16) -> u16 {
        let mut out = 0;
        for (i, &col) in self.cols.iter().enumerate() {
            if v >> i & 1 == 1 {
                out ^= col;
            }
        }
        out
    }
}

/// Every subspace of `F_2^n`. Counts grow as Galois numbers (2825 at n = 6);
/// callers keep `n <= 6`.
pub(crate) fn all_subspaces(n: usize) -> Vec<Subspace> {
    assert!(n <= 6, "full subspace lattice is only enumerated in low dimension");
    let full = all_ones(n);
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(Subspace::zero());
    let mut queue = vec![Subspace::zero()];
    while let Some(s) = queue.pop() {
        for v in 1..=full {
            if !s.contains(v) {
                let mut t = s.clone();
                t.insert(v);
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Every subspace of `F_2^n` invariant under all of `gens`.
///
/// Complete without enumerating the full lattice: an invariant subspace is
/// the join of the orbit-spans of its members, and a join of invariant
/// subspaces is invariant, so closing the orbit-spans under pairwise join
/// reaches exactly the invariant subspaces.
pub(crate) fn invariant_subspaces(n: usize, gens: &[LinMap]) -> Vec<Subspace> {
    let full = all_ones(n);
    let mut found = std::collections::BTreeSet::new();
    found.insert(Subspace::zero());
    for v in 1..=full {
        let mut orbit = vec![v];
        let mut seen = vec![false; 1usize << n];
        seen[v as usize] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            i += 1;
            for g in gens {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
        }
        found.insert(Subspace::from_vectors(orbit));
    }
    loop {
        let snapshot: Vec<Subspace> = found.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let join = snapshot[i].join(&snapshot[j]);
                if found.insert(join) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    found.into_iter().collect()
}

/// Vector rendered with coordinate 0 first: `0b0011` in F_2^4 is "1100".
pub(crate) fn bits_string(v: u16, n: usize) -> String {
    (0..n).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_are_galois_numbers() {
        assert_eq!(all_subspaces(2).len(), 5);
        assert_eq!(all_subspaces(4).len(), 67);
        assert_eq!(all_subspaces(6).len(), 2825);
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::from_vectors([0b0011, 0b0110]);
        let b = Subspace::from_vectors([0b0101, 0b0110]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.elements(), vec![0b0000, 0b0011, 0b0101, 0b0110]);
    }

    #[test]
    fn klein_action_has_three_extra_planes() {
        // (12)(34) and (13)(24) on four coordinates.
        let gens =
            vec![LinMap::from_perm(&[1, 0, 3, 2]), LinMap::from_perm(&[2, 3, 0, 1])];
        let inv = invariant_subspaces(4, &gens);
        // 0, Δ, three planes through Δ, V_e, everything.
        assert_eq!(inv.len(), 7);
        let full = all_ones(4);
        let proper: Vec<_> =
            inv.iter().filter(|s| s.dim() > 0 && s.dim() < 4).collect();
        assert_eq!(proper.len(), 5);
        assert!(proper.iter().all(|s| s.contains(full) || s.dim() == 1));
    }

    #[test]
    fn span_route_matches_full_lattice_filter() {
        // A 3-cycle and a 5-cycle generate the alternating action at n = 5.
        let gens =
            vec![LinMap::from_perm(&[1, 2, 0, 3, 4]), LinMap::from_perm(&[1, 2, 3, 4, 0])];
        let by_span = invariant_subspaces(5, &gens);
        let by_filter: Vec<Subspace> = all_subspaces(5)
            .into_iter()
            .filter(|s| s.is_invariant(&gens))
            .collect();
        assert_eq!(by_span, by_filter);
    }
}
