//! Root enumeration and reflections.
//!
//! Roots are stored as doubled coordinate vectors, matching the doubled
//! matrix convention: half-integral Euclidean coordinates (F4's short
//! half-sum roots) become odd integers. Classical types and F4 use
//! Euclidean coordinates; G2 and the E series use simple-root-basis
//! coordinates, where every root is an integer combination of simples and
//! reflections act by integer matrices.

use crate::finite_group::{GroupElement, Mat, SignedPerm};

use super::{CartanType, Series};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootCoords {
    Euclidean,
    SimpleBasis,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub t: CartanType,
    pub coords: RootCoords,
    /// Ambient dimension of the coordinate vectors.
    pub dim: usize,
    /// Doubled coordinates.
    pub roots: Vec<Vec<i32>>,
}

/// Cartan matrix `a[i][j] = <α_i, α_j^∨>` and the relative root lengths
/// `d[j] = (α_j, α_j)/2` making `a[i][j]·d[j]` symmetric.
pub(crate) fn cartan_matrix(t: CartanType) -> (Vec<Vec<i32>>, Vec<i32>) {
    let n = t.rank;
    match t.series {
        Series::G => (vec![vec![2, -1], vec![-3, 2]], vec![1, 3]),
        Series::E => {
            // Chain 0-2-3-4-5[-6[-7]] with node 1 hanging off node 3.
            let mut edges: Vec<(usize, usize)> = vec![(0, 2), (1, 3)];
            for i in 2..n - 1 {
                edges.push((i, i + 1));
            }
            let mut a = vec![vec![0; n]; n];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            for (i, j) in edges {
                a[i][j] = -1;
                a[j][i] = -1;
            }
            (a, vec![1; n])
        }
        _ => unreachable!("only root-basis systems carry Cartan data here"),
    }
}

/// All roots of the system.
pub fn roots(t: CartanType) -> RootSystem {
    let n = t.rank;
    match t.series {
        Series::A => {
            let dim = n + 1;
            let mut roots = Vec::with_capacity(n * (n + 1));
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        let mut v = vec![0; dim];
                        v[i] = 2;
                        v[j] = -2;
                        roots.push(v);
                    }
                }
            }
            RootSystem { t, coords: RootCoords::Euclidean, dim, roots }
        }
        Series::B | Series::C | Series::D => {
            let mut roots = Vec::new();
            // pair roots ±e_i ± e_j
            for i in 0..n {
                for j in i + 1..n {
                    for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                        let mut v = vec![0; n];
                        v[i] = si;
                        v[j] = sj;
                        roots.push(v);
                    }
                }
            }
            // axis roots: ±e_i for B, ±2e_i for C, none for D
            let axis = match t.series {
                Series::B => Some(2),
                Series::C => Some(4),
                _ => None,
            };
            if let Some(a) = axis {
                for i in 0..n {
                    for s in [a, -a] {
                        let mut v = vec![0; n];
                        v[i] = s;
                        roots.push(v);
                    }
                }
            }
            RootSystem { t, coords: RootCoords::Euclidean, dim: n, roots }
        }
        Series::F => {
            let mut roots = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                        let mut v = vec![0; 4];
                        v[i] = si;
                        v[j] = sj;
                        roots.push(v);
                    }
                }
            }
            for i in 0..4 {
                for s in [2, -2] {
                    let mut v = vec![0; 4];
                    v[i] = s;
                    roots.push(v);
                }
            }
            for mask in 0..16u32 {
                let v: Vec<i32> =
                    (0..4).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
                roots.push(v);
            }
            RootSystem { t, coords: RootCoords::Euclidean, dim: 4, roots }
        }
        Series::G | Series::E => {
            let (a, _) = cartan_matrix(t);
            // close the simple basis under simple reflections (undoubled, then
            // double for storage)
            let mut seen: Vec<Vec<i32>> = Vec::new();
            let mut queue: Vec<Vec<i32>> = (0..n)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v
                })
                .collect();
            while let Some(v) = queue.pop() {
                if seen.contains(&v) {
                    continue;
                }
                seen.push(v.clone());
                for j in 0..n {
                    let pairing: i32 = (0..n).map(|i| v[i] * a[i][j]).sum();
                    let mut w = v.clone();
                    w[j] -= pairing;
                    queue.push(w);
                }
            }
            seen.sort_unstable();
            let roots = seen.into_iter().map(|v| v.iter().map(|&x| 2 * x).collect()).collect();
            RootSystem { t, coords: RootCoords::SimpleBasis, dim: n, roots }
        }
    }
}

/// Identity element of the carrier `weyl_group(t)` acts on.
pub(crate) fn carrier_identity(t: CartanType) -> GroupElement {
    match t.series {
        Series::A => GroupElement::Signed(SignedPerm::identity(t.rank + 1)),
        Series::B | Series::C | Series::D => {
            GroupElement::Signed(SignedPerm::identity(t.rank))
        }
        Series::F => GroupElement::Mat(Mat::identity(4)),
        Series::G | Series::E => GroupElement::Mat(Mat::identity(t.rank)),
    }
}

/// Reflections in the simple roots, on the same carrier as `weyl_group(t)`.
pub fn simple_reflections(t: CartanType) -> Vec<GroupElement> {
    let n = t.rank;
    match t.series {
        Series::A => (0..n).map(|i| transposition(n + 1, i, i + 1)).collect(),
        Series::B | Series::C => {
            let mut out: Vec<GroupElement> =
                (0..n - 1).map(|i| transposition(n, i, i + 1)).collect();
            let mut flips = vec![false; n];
            flips[n - 1] = true;
            out.push(GroupElement::Signed(SignedPerm::new(
                &(0..n).collect::<Vec<_>>(),
                &flips,
            )));
            out
        }
        Series::D => {
            let mut out: Vec<GroupElement> =
                (0..n - 1).map(|i| transposition(n, i, i + 1)).collect();
            // reflection in e_{n-1} + e_n: swap the last two axes, both signs flipped
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(n - 2, n - 1);
            let mut flips = vec![false; n];
            flips[n - 2] = true;
            flips[n - 1] = true;
            out.push(GroupElement::Signed(SignedPerm::new(&images, &flips)));
            out
        }
        Series::F => {
            // e_2-e_3, e_3-e_4, e_4, (e_1-e_2-e_3-e_4)/2, doubled
            let simples: [[i32; 4]; 4] = [
                [0, 2, -2, 0],
                [0, 0, 2, -2],
                [0, 0, 0, 2],
                [1, -1, -1, -1],
            ];
            simples.iter().map(|r| euclidean_reflection(r)).collect()
        }
        Series::G | Series::E => {
            let (a, _) = cartan_matrix(t);
            (0..n)
                .map(|j| {
                    // identity except row j: M[j][k] = δ_{jk} - a[k][j]
                    let mut data = vec![0i32; n * n];
                    for r in 0..n {
                        data[r * n + r] = 2;
                    }
                    for k in 0..n {
                        data[j * n + k] -= 2 * a[k][j];
                    }
                    GroupElement::Mat(Mat::from_doubled(n, &data))
                })
                .collect()
        }
    }
}

/// The reflection in an arbitrary root, given in the system's own frame and
/// doubled, as an element of the `weyl_group(t)` carrier.
pub fn reflection_in_root(t: CartanType, root: &[i32]) -> GroupElement {
    match t.series {
        Series::A | Series::B | Series::C | Series::D => {
            GroupElement::Signed(signed_reflection(root))
        }
        Series::F => euclidean_reflection(root),
        Series::G | Series::E => {
            let (a, d) = cartan_matrix(t);
            let n = t.rank;
            // F(x, y) = Σ x_i y_j a[i][j] d[j], doubled-coordinate form values
            let form = |x: &[i32], y: &[i32]| -> i64 {
                let mut acc = 0i64;
                for i in 0..n {
                    for j in 0..n {
                        acc += x[i] as i64 * y[j] as i64 * (a[i][j] * d[j]) as i64;
                    }
                }
                acc
            };
            let gg = form(root, root);
            assert!(gg > 0, "root has nonpositive norm");
            let mut data = vec![0i32; n * n];
            for k in 0..n {
                let mut ek = vec![0; n];
                ek[k] = 1;
                let c_num = 4 * form(&ek, root);
                for r in 0..n {
                    let mut entry = if r == k { 2i64 } else { 0 };
                    let num = c_num * root[r] as i64;
                    assert!(num % gg == 0, "reflection left the root lattice");
                    entry -= num / gg;
                    data[r * n + k] = i32::try_from(entry).expect("entry overflow");
                }
            }
            GroupElement::Mat(Mat::from_doubled(n, &data))
        }
    }
}

fn transposition(axes: usize, i: usize, j: usize) -> GroupElement {
    let mut images: Vec<usize> = (0..axes).collect();
    images.swap(i, j);
    GroupElement::Signed(SignedPerm::new(&images, &vec![false; axes]))
}

/// Classify a doubled Euclidean root with signed-permutation reflection:
/// one nonzero coordinate flips an axis; ±e_i ∓ e_j transposes; ±e_i ± e_j
/// transposes with both signs flipped.
fn signed_reflection(root: &[i32]) -> SignedPerm {
    let nz: Vec<usize> = (0..root.len()).filter(|&i| root[i] != 0).collect();
    let axes = root.len();
    match nz.as_slice() {
        [i] => {
            let mut flips = vec![false; axes];
            flips[*i] = true;
            SignedPerm::new(&(0..axes).collect::<Vec<_>>(), &flips)
        }
        [i, j] if root[*i].abs() == root[*j].abs() => {
            let mut images: Vec<usize> = (0..axes).collect();
            images.swap(*i, *j);
            let mut flips = vec![false; axes];
            if root[*i].signum() == root[*j].signum() {
                flips[*i] = true;
                flips[*j] = true;
            }
            SignedPerm::new(&images, &flips)
        }
        _ => panic!("not a classical root: {root:?}"),
    }
}

/// Doubled reflection matrix `2I - 4ggᵀ/(g,g)` for a doubled Euclidean root g.
fn euclidean_reflection(root: &[i32]) -> GroupElement {
    let n = root.len();
    let gg: i64 = root.iter().map(|&x| (x as i64) * (x as i64)).sum();
    assert!(gg > 0);
    let mut data = vec![0i32; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut entry = if i == j { 2i64 } else { 0 };
            let num = 4 * root[i] as i64 * root[j] as i64;
            assert!(num % gg == 0, "reflection left the half-integer lattice");
            entry -= num / gg;
            data[i * n + j] = i32::try_from(entry).expect("entry overflow");
        }
    }
    GroupElement::Mat(Mat::from_doubled(n, &data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(roots(t("A_2")).roots.len(), 6);
        assert_eq!(roots(t("A_4")).roots.len(), 20);
        assert_eq!(roots(t("B_2")).roots.len(), 8);
        assert_eq!(roots(t("B_4")).roots.len(), 32);
        assert_eq!(roots(t("C_3")).roots.len(), 18);
        assert_eq!(roots(t("D_4")).roots.len(), 24);
        assert_eq!(roots(t("G_2")).roots.len(), 12);
        assert_eq!(roots(t("F_4")).roots.len(), 48);
        assert_eq!(roots(t("E_6")).roots.len(), 72);
        assert_eq!(roots(t("E_7")).roots.len(), 126);
        assert_eq!(roots(t("E_8")).roots.len(), 240);
    }

    #[test]
    fn every_root_reflection_is_an_involution() {
        for name in ["A_3", "B_3", "C_3", "D_4", "F_4", "G_2", "E_6"] {
            let ty = t(name);
            let rs = roots(ty);
            for r in &rs.roots {
                let s = reflection_in_root(ty, r);
                assert_eq!(s.order(), 2, "reflection order in {name} for root {r:?}");
            }
        }
    }

    #[test]
    fn f4_simple_reflections_are_exact() {
        for s in simple_reflections(t("F_4")) {
            assert_eq!(s.order(), 2);
            assert!(s.compose(&s).is_identity());
        }
    }

    #[test]
    fn root_negation_gives_same_reflection() {
        let ty = t("F_4");
        for r in &roots(ty).roots {
            let neg: Vec<i32> = r.iter().map(|&x| -x).collect();
            assert_eq!(reflection_in_root(ty, r), reflection_in_root(ty, &neg));
        }
    }
}
