use std::collections::HashMap;

use rand::Rng;
use serde::Deserialize;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::permgroup::Permutation;

/// Largest admissible number of points upstairs.
pub const MAX_COVER_POINTS: usize = 1000;

/// A free right action of a finite group on a finite set `X̃`, with its
/// quotient `X = X̃/G`, projection `τ` and a section `σ`.
#[derive(Clone, Debug)]
pub struct FiniteCover {
    points: Vec<String>,
    base: Vec<String>,
    group: FiniteGroup,
    /// `act[x][g]` = index of `x g`.
    act: Vec<Vec<usize>>,
    tau: Vec<usize>,
    section: Vec<usize>,
}

impl FiniteCover {
    /// Builds the cover from an action table. Fibers are numbered by their
    /// smallest point, which also serves as the default section.
    fn from_action(points: Vec<String>, group: FiniteGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        for (x, row) in act.iter().enumerate() {
            let mut images = row.clone();
            images.sort_unstable();
            images.dedup();
            if images.len() != group.order() {
                return Err(Error::domain(format!("action is not free at point {}", points[x])));
            }
        }
        let mut tau = vec![usize::MAX; points.len()];
        let mut section = Vec::new();
        for x in 0..points.len() {
            if tau[x] == usize::MAX {
                for &y in &act[x] {
                    tau[y] = section.len();
                }
                section.push(x);
            }
        }
        let base = section
            .iter()
            .map(|&x| {
                let mut fiber: Vec<&str> = act[x].iter().map(|&y| points[y].as_str()).collect();
                fiber.sort_unstable();
                format!("{{{}}}", fiber.join(" "))
            })
            .collect();
        Ok(FiniteCover { points, base, group, act, tau, section })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    /// Labels of the base points, one per fiber.
    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `|X̃|`.
    pub fn total_size(&self) -> usize {
        self.points.len()
    }

    /// `|X|`.
    pub fn base_size(&self) -> usize {
        self.section.len()
    }

    /// Index of `x g`.
    #[inline]
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.act[x][g]
    }

    #[inline]
    pub fn tau(&self, x: usize) -> usize {
        self.tau[x]
    }

    #[inline]
    pub fn sigma(&self, q: usize) -> usize {
        self.section[q]
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    /// The unique `h` with `x h = σ(τ(x))`.
    pub fn to_section(&self, x: usize) -> usize {
        let target = self.section[self.tau[x]];
        (0..self.group.order()).find(|&h| self.act[x][h] == target).expect("fiber is a single free orbit")
    }

    /// Same cover with a different section; fails unless `τ(σ(q)) = q`.
    pub fn with_section(&self, section: Vec<usize>) -> Result<Self> {
        if section.len() != self.base_size()
            || section.iter().enumerate().any(|(q, &x)| x >= self.total_size() || self.tau[x] != q)
        {
            return Err(Error::domain("not a section: τ(σ(q)) must equal q for every base point"));
        }
        Ok(FiniteCover { section, ..self.clone() })
    }

    /// A uniformly random section.
    pub fn random_section<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let order = self.group.order();
        let section = self.section.iter().map(|&x| self.act[x][rng.gen_range(0..order)]).collect();
        FiniteCover { section, ..self.clone() }
    }

    /// Loads a cover description:
    ///
    /// ```json
    /// {"kind": "symmetric", "q": ["a", "b", "c"], "N": 2}
    /// {"kind": "explicit", "points": ["x", "y"], "generators": ["(x y)"], "section": ["x"]}
    /// ```
    ///
    /// Explicit generators are permutations of the points in cycle notation;
    /// `g` acts on the right by `x g = g⁻¹(x)`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CoverSpec = serde_json::from_str(text)?;
        match spec {
            CoverSpec::Symmetric { q, n } => {
                let names: Vec<String> = q;
                let distinct: std::collections::HashSet<&String> = names.iter().collect();
                if distinct.len() != names.len() {
                    return Err(Error::domain("point names must be distinct"));
                }
                let mut cover = symmetric_cover(names.len(), n)?;
                cover.relabel(&names);
                Ok(cover)
            }
            CoverSpec::Explicit { points, generators, section } => {
                let lookup: HashMap<&str, usize> = points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
                if lookup.len() != points.len() {
                    return Err(Error::domain("point names must be distinct"));
                }
                if points.is_empty() || points.len() > MAX_COVER_POINTS {
                    return Err(Error::domain(format!("cover needs 1..={MAX_COVER_POINTS} points")));
                }
                let gens = generators.iter().map(|g| parse_cycles(g, &lookup)).collect::<Result<Vec<_>>>()?;
                let cover = explicit_cover(points.clone(), &gens)?;
                match section {
                    None => Ok(cover),
                    Some(names) => {
                        let idx = names
                            .iter()
                            .map(|s| {
                                lookup
                                    .get(s.as_str())
                                    .copied()
                                    .ok_or_else(|| Error::domain(format!("unknown point {s:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        if idx.len() != cover.base_size() {
                            return Err(Error::domain("section must pick exactly one point per fiber"));
                        }
                        // Accept the section in any fiber order.
                        let mut by_fiber = vec![usize::MAX; cover.base_size()];
                        for x in idx {
                            by_fiber[cover.tau(x)] = x;
                        }
                        if by_fiber.contains(&usize::MAX) {
                            return Err(Error::domain("section must pick exactly one point per fiber"));
                        }
                        cover.with_section(by_fiber)
                    }
                }
            }
        }
    }

    fn relabel(&mut self, names: &[String]) {
        let rename = |label: &str| -> String {
            label
                .split(|ch: char| !ch.is_ascii_digit())
                .filter(|t| !t.is_empty())
                .map(|t| names[t.parse::<usize>().expect("digits") - 1].clone())
                .collect::<Vec<_>>()
                .join(",")
        };
        for p in &mut self.points {
            *p = format!("({})", rename(p));
        }
        for b in &mut self.base {
            *b = format!("{{{}}}", rename(b));
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CoverSpec {
    Symmetric {
        q: Vec<String>,
        #[serde(rename = "N")]
        n: usize,
    },
    Explicit {
        points: Vec<String>,
        generators: Vec<String>,
        #[serde(default)]
        section: Option<Vec<String>>,
    },
}

/// Parses `(a b c)(d e)` over named points; `e` or `()` is the identity.
fn parse_cycles(text: &str, lookup: &HashMap<&str, usize>) -> Result<Permutation> {
    let n = lookup.len();
    let trimmed = text.trim();
    if trimmed == "e" || trimmed.is_empty() {
        return Ok(Permutation::identity(n));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unbalanced cycle in {text:?}")))?;
        let cycle = open[..close]
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                lookup.get(t).map(|&i| i + 1).ok_or_else(|| Error::Parse(format!("unknown point {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != cycle.len() {
            return Err(Error::Parse(format!("repeated point in cycle of {text:?}")));
        }
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(n, &refs)
}

/// Cover generated by point permutations acting as `x g = g⁻¹(x)`.
pub fn explicit_cover(points: Vec<String>, generators: &[Permutation]) -> Result<FiniteCover> {
    let group = FiniteGroup::generated_by(points.len(), generators)?;
    let act = (0..points.len()).map(|x| group.elements().iter().map(|g| g.inverse().apply(x)).collect()).collect();
    FiniteCover::from_action(points, group, act)
}

/// `X̃` = injective `N`-tuples of `{1, ..., |Q|}`, `G = S_N` acting by
/// `(x̃ h)_i = x̃_{h(i)}`, `X` = `N`-subsets, `σ` = increasing tuple.
pub fn symmetric_cover(q_size: usize, n: usize) -> Result<FiniteCover> {
    if n == 0 || q_size < n {
        return Err(Error::domain(format!("need 1 <= N <= |Q|, got |Q|={q_size}, N={n}")));
    }
    let count = ((q_size - n + 1)..=q_size).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX);
    if count > MAX_COVER_POINTS {
        return Err(Error::ResourceCap { requested: count, cap: MAX_COVER_POINTS });
    }
    let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(count);
    let mut current = Vec::with_capacity(n);
    injective_tuples(q_size, n, &mut current, &mut tuples);
    let index: HashMap<Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let group = FiniteGroup::symmetric(n);
    let act = tuples
        .iter()
        .map(|t| group.elements().iter().map(|h| index[&(0..n).map(|i| t[h.apply(i)]).collect::<Vec<_>>()]).collect())
        .collect();
    let points = tuples
        .iter()
        .map(|t| format!("({})", t.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let cover = FiniteCover::from_action(points, group, act)?;
    let sorted: Vec<usize> = cover
        .section()
        .iter()
        .map(|&x| {
            let mut t = tuples[x].clone();
            t.sort_unstable();
            index[&t]
        })
        .collect();
    let mut cover = cover.with_section(sorted)?;
    cover.base = cover.section.iter().map(|&x| cover.points[x].replace('(', "{").replace(')', "}")).collect();
    Ok(cover)
}

fn injective_tuples(q: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for x in 0..q {
        if !current.contains(&x) {
            current.push(x);
            injective_tuples(q, n, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_of_three_points() {
        let cover = symmetric_cover(3, 2).unwrap();
        assert_eq!(cover.total_size(), 6);
        assert_eq!(cover.base_size(), 3);
        for q in 0..3 {
            assert_eq!(cover.tau(cover.sigma(q)), q);
        }
        assert_eq!(cover.points()[cover.sigma(0)], "(1,2)");
        assert!(symmetric_cover(2, 3).is_err());
    }

    #[test]
    fn explicit_two_point_cover() {
        let cover = FiniteCover::from_json(r#"{"kind":"explicit","points":["u","d"],"generators":["(u d)"]}"#).unwrap();
        assert_eq!(cover.group().order(), 2);
        assert_eq!(cover.base_size(), 1);
        let bad = FiniteCover::from_json(r#"{"kind":"explicit","points":["u","d","x"],"generators":["(u d)"]}"#);
        assert!(matches!(bad, Err(Error::Domain(_))));
    }

    #[test]
    fn named_symmetric_cover() {
        let cover = FiniteCover::from_json(r#"{"kind":"symmetric","q":["a","b","c"],"N":2}"#).unwrap();
        assert_eq!(cover.points()[0], "(a,b)");
        assert_eq!(cover.base()[0], "{a,b}");
    }
}
