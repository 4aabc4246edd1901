use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexOperator};
use crate::permgroup::{irrep, Partition, Permutation};

/// Largest group order generated from user-supplied generators.
pub const MAX_GROUP_ORDER: usize = 5040;

/// A finite group realized as permutations, with its multiplication table.
///
/// Elements are sorted lexicographically, so index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    symmetric_degree: Option<usize>,
}

impl FiniteGroup {
    fn from_elements(mut elements: Vec<Permutation>, symmetric_degree: Option<usize>) -> Self {
        elements.sort();
        let index: HashMap<Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let table = elements.iter().map(|a| elements.iter().map(|b| index[&(a * b)]).collect()).collect();
        let inverse = elements.iter().map(|a| index[&a.inverse()]).collect();
        FiniteGroup { elements, index, table, inverse, symmetric_degree }
    }

    /// The full symmetric group `S_n`.
    pub fn symmetric(n: usize) -> Self {
        Self::from_elements(Permutation::all(n), Some(n))
    }

    /// Closure of `generators` (all of one degree) under composition.
    pub fn generated_by(degree: usize, generators: &[Permutation]) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::domain("generators must all act on the same point set"));
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: std::collections::HashSet<Permutation> = elements.iter().cloned().collect();
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in generators {
                let next = &current * g;
                if seen.insert(next.clone()) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(Error::ResourceCap { requested: MAX_GROUP_ORDER + 1, cap: MAX_GROUP_ORDER });
                    }
                    elements.push(next);
                }
            }
        }
        Ok(Self::from_elements(elements, None))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, g: usize) -> &Permutation {
        &self.elements[g]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `g h`.
    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// `Some(n)` when this is `S_n` acting on `n` slots.
    pub fn symmetric_degree(&self) -> Option<usize> {
        self.symmetric_degree
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|x| self.mul(self.mul(x, g), self.inv(x))).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        classes
    }
}

/// A unitary representation of a [`FiniteGroup`], one matrix per element
/// (indexed like the group).
#[derive(Clone, Debug)]
pub struct GroupRep {
    label: String,
    matrices: Vec<ComplexOperator>,
}

impl GroupRep {
    pub fn new(label: impl Into<String>, matrices: Vec<ComplexOperator>) -> Self {
        GroupRep { label: label.into(), matrices }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        GroupRep::new("trivial", vec![linalg::identity(1); group.order()])
    }

    /// Young's orthogonal form of `shape`, for `S_n` only.
    pub fn young(group: &FiniteGroup, shape: &Partition) -> Result<Self> {
        if group.symmetric_degree() != Some(shape.total()) {
            return Err(Error::domain(format!("{shape} labels an irrep of S_{}, not of this group", shape.total())));
        }
        let rep = irrep(shape);
        Ok(GroupRep::new(shape.to_string(), group.elements().iter().map(|p| rep.matrix(p)).collect()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrix(&self, g: usize) -> &ComplexOperator {
        &self.matrices[g]
    }

    pub fn character(&self, g: usize) -> Complex64 {
        linalg::trace(&self.matrices[g])
    }

    /// `max |U(g) U(h) - U(gh)|` over all pairs.
    pub fn homomorphism_residual(&self, group: &FiniteGroup) -> f64 {
        let n = group.order();
        let mut worst = 0.0_f64;
        for g in 0..n {
            for h in 0..n {
                let lhs = &self.matrices[g] * &self.matrices[h];
                worst = worst.max(linalg::max_abs_diff(&lhs, &self.matrices[group.mul(g, h)]));
            }
        }
        worst
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.matrices.iter().map(linalg::unitarity_residual).fold(0.0, f64::max)
    }
}

/// All irreducible representations of `group`, up to equivalence.
///
/// For `S_n` these are Young's orthogonal forms labelled by partitions in
/// reverse-lexicographic order; otherwise [`regular_irreps`].
pub fn irreps(group: &FiniteGroup) -> Result<Vec<GroupRep>> {
    match group.symmetric_degree() {
        Some(n) => Partition::enumerate(n)?.iter().map(|l| GroupRep::young(group, l)).collect(),
        None => regular_irreps(group),
    }
}

fn left_regular(group: &FiniteGroup, g: usize) -> ComplexOperator {
    let n = group.order();
    let mut m = linalg::zeros(n, n);
    for h in 0..n {
        m[(group.mul(g, h), h)] = c(1.0);
    }
    m
}

fn right_regular(group: &FiniteGroup, g: usize) -> ComplexOperator {
    let n = group.order();
    let mut m = linalg::zeros(n, n);
    let gi = group.inv(g);
    for h in 0..n {
        m[(group.mul(h, gi), h)] = c(1.0);
    }
    m
}

/// Groups eigenvalue indices into clusters of nearly equal values.
fn clusters(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(last) if (v - values[*last.last().expect("non-empty")]).abs() <= tol => last.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn select_columns(m: &ComplexOperator, cols: &[usize]) -> ComplexOperator {
    let mut out = linalg::zeros(m.nrows(), cols.len());
    for (dst, &src) in cols.iter().enumerate() {
        out.set_column(dst, &m.column(src));
    }
    out
}

/// Irreps of an arbitrary finite group by decomposing the left regular
/// representation: a generic Hermitian element of the centre splits it into
/// isotypic blocks, and a generic Hermitian element of the right regular
/// action (which commutes with the left one) cuts one irreducible copy out of
/// each block. Labels are `chi0, chi1, ...`, sorted by dimension with the
/// trivial representation first.
pub fn regular_irreps(group: &FiniteGroup) -> Result<Vec<GroupRep>> {
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ec7_0002);
    let lefts: Vec<ComplexOperator> = (0..n).map(|g| left_regular(group, g)).collect();

    let mut central = linalg::zeros(n, n);
    for class in group.conjugacy_classes() {
        let mut sum = linalg::zeros(n, n);
        for &g in &class {
            sum += &lefts[g];
        }
        let (a, b): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let herm = &sum + sum.adjoint();
        let anti = (&sum - sum.adjoint()) * Complex64::new(0.0, 1.0);
        central += herm.scale(a) + anti.scale(b);
    }
    let (vals, vecs) = linalg::hermitian_eigen(&central);
    let scale = vals.iter().fold(1.0_f64, |a, v| a.max(v.abs()));

    let mut right = linalg::zeros(n, n);
    for g in 0..n {
        let w = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        right += right_regular(group, g) * w;
    }
    let right = (&right + right.adjoint()).scale(0.5);

    let mut reps = Vec::new();
    for block in clusters(&vals, 1e-8 * scale) {
        let iso = select_columns(&vecs, &block);
        let d = (block.len() as f64).sqrt().round() as usize;
        if d * d != block.len() {
            return Err(Error::consistency(format!("isotypic block of size {} is not a square", block.len())));
        }
        let (rv, rvecs) = linalg::hermitian_eigen(&(iso.adjoint() * &right * &iso));
        let rscale = rv.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
        let first = clusters(&rv, 1e-8 * rscale).remove(0);
        if first.len() != d {
            return Err(Error::consistency("right-regular element is not generic enough"));
        }
        let copy = &iso * select_columns(&rvecs, &first);
        let matrices: Vec<ComplexOperator> = lefts.iter().map(|l| copy.adjoint() * l * &copy).collect();
        reps.push(GroupRep::new(String::new(), matrices));
    }
    if reps.iter().map(|r| r.dim() * r.dim()).sum::<usize>() != n {
        return Err(Error::consistency("irrep dimensions do not account for the group order"));
    }
    let is_trivial = |r: &GroupRep| r.dim() == 1 && (0..n).all(|g| (r.character(g) - c(1.0)).norm() < 1e-9);
    reps.sort_by(|a, b| {
        a.dim().cmp(&b.dim()).then(is_trivial(b).cmp(&is_trivial(a))).then_with(|| {
            let key = |r: &GroupRep| -> Vec<(f64, f64)> {
                (0..n).map(|g| (-r.character(g).re, -r.character(g).im)).collect()
            };
            key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    for (i, r) in reps.iter_mut().enumerate() {
        r.label = format!("chi{i}");
    }
    Ok(reps)
}
