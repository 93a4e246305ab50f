//! Arity-tagged finite relations and the extensional algebra over them:
//! natural join keyed by column pairs, complement, column elimination,
//! the truth lift and the join-induced preorder.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Index of an element in a [`Domain`].
pub type Element = usize;
pub type Tuple = Vec<Element>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("domain must be nonempty")]
    EmptyDomain,
    #[error("element `{0}` listed twice in domain")]
    DuplicateElement(String),
    #[error("element `{0}` is not in the domain")]
    UnknownElement(String),
    #[error("tuple of length {found} in a relation of arity {arity}")]
    TupleArity { arity: usize, found: usize },
    #[error("join pair ({0},{1}) out of range for arities {2} and {3}")]
    IndexOutOfRange(usize, usize, usize, usize),
    #[error("join pairs must use each column at most once: {0}")]
    InvalidJoinSpec(String),
    #[error("relation mentions element #{0}, outside a domain of size {1}")]
    ForeignElement(Element, usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("not a permutation of 1..{0}: {1:?}")]
    BadPermutation(usize, Vec<usize>),
}

/// A finite, nonempty, lexicographically sorted set of named elements.
///
/// Elements are addressed by index, so index order is name order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    names: Vec<String>,
}

impl Domain {
    pub fn new<I, S>(names: I) -> Result<Self, RelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(RelError::EmptyDomain);
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(RelError::DuplicateElement(w[0].clone()));
        }
        Ok(Domain { names })
    }

    /// `a, b, c, ...` for up to 26 elements, `e00, e01, ...` beyond that.
    pub fn of_size(n: usize) -> Result<Self, RelError> {
        if n <= 26 {
            Domain::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            let width = (n - 1).to_string().len();
            Domain::new((0..n).map(|i| format!("e{i:0width$}")))
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<Element> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.names.len()
    }

    /// All k-tuples in lexicographic order.
    pub fn tuples(&self, k: usize) -> Tuples {
        Tuples {
            size: self.len(),
            current: Some(vec![0; k]),
        }
    }

    /// `|D|^k`, saturating.
    pub fn tuple_count(&self, k: usize) -> u128 {
        (self.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
    }

    pub fn render_tuple(&self, t: &[Element]) -> String {
        let parts: Vec<&str> = t.iter().map(|&e| self.name(e)).collect();
        format!("({})", parts.join(","))
    }
}

/// Iterator over `D^k` in lexicographic order.
pub struct Tuples {
    size: usize,
    current: Option<Tuple>,
}

impl Iterator for Tuples {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                // wrapped around (or k = 0, which has exactly one tuple)
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.size {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<Tuple>,
}

impl Relation {
    pub fn empty(arity: usize) -> Self {
        Relation {
            arity,
            tuples: BTreeSet::new(),
        }
    }

    /// `{<>}`, the truth value t.
    pub fn truth() -> Self {
        let mut r = Relation::empty(0);
        r.tuples.insert(Vec::new());
        r
    }

    /// The empty nullary relation, the truth value f.
    pub fn falsity() -> Self {
        Relation::empty(0)
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Relation::truth()
        } else {
            Relation::falsity()
        }
    }

    pub fn new<I>(arity: usize, tuples: I) -> Result<Self, RelError>
    where
        I: IntoIterator<Item = Tuple>,
    {
        let mut r = Relation::empty(arity);
        for t in tuples {
            r.insert(t)?;
        }
        Ok(r)
    }

    /// Build from element names, e.g. `[["a","b"]]`.
    pub fn from_names<T, S>(domain: &Domain, arity: usize, tuples: T) -> Result<Self, RelError>
    where
        T: IntoIterator,
        T::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut r = Relation::empty(arity);
        for t in tuples {
            let tuple = t
                .into_iter()
                .map(|n| {
                    domain
                        .index(n.as_ref())
                        .ok_or_else(|| RelError::UnknownElement(n.as_ref().to_string()))
                })
                .collect::<Result<Tuple, _>>()?;
            r.insert(tuple)?;
        }
        Ok(r)
    }

    /// `D^k`.
    pub fn full(arity: usize, domain: &Domain) -> Self {
        Relation {
            arity,
            tuples: domain.tuples(arity).collect(),
        }
    }

    pub fn insert(&mut self, t: Tuple) -> Result<bool, RelError> {
        if t.len() != self.arity {
            return Err(RelError::TupleArity {
                arity: self.arity,
                found: t.len(),
            });
        }
        Ok(self.tuples.insert(t))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &[Element]) -> bool {
        self.tuples.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Tuple> {
        self.tuples.iter()
    }

    pub fn is_truth(&self) -> bool {
        self.arity == 0 && !self.tuples.is_empty()
    }

    /// Equality of tuple sets. Unlike `==`, empty relations of different
    /// arities compare equal here: they are all the same empty set.
    pub fn same_tuples(&self, other: &Relation) -> bool {
        self.tuples == other.tuples
    }

    pub fn union(&self, other: &Relation) -> Result<Relation, RelError> {
        if self.arity != other.arity {
            return Err(RelError::ArityMismatch(self.arity, other.arity));
        }
        Ok(Relation {
            arity: self.arity,
            tuples: self.tuples.union(&other.tuples).cloned().collect(),
        })
    }

    pub fn filter(&self, mut keep: impl FnMut(&[Element]) -> bool) -> Relation {
        Relation {
            arity: self.arity,
            tuples: self.tuples.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    fn max_element(&self) -> Option<Element> {
        self.tuples.iter().flat_map(|t| t.iter().copied()).max()
    }

    /// Sorted tuples, one per line; `t`/`f` for nullary relations.
    pub fn render_lines(&self, domain: &Domain) -> Vec<String> {
        if self.arity == 0 {
            return vec![if self.is_truth() { "t" } else { "f" }.to_string()];
        }
        self.tuples.iter().map(|t| domain.render_tuple(t)).collect()
    }

    /// `{(a,b),(b,b)}`, `{<>}` or `{}`.
    pub fn render_set(&self, domain: &Domain) -> String {
        let parts: Vec<String> = self
            .tuples
            .iter()
            .map(|t| if t.is_empty() { "<>".to_string() } else { domain.render_tuple(t) })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Pairs `(i1, i2)` of 1-based column indices joining column `i1` of the left
/// operand with column `i2` of the right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JoinSpec(Vec<(usize, usize)>);

impl JoinSpec {
    pub fn empty() -> Self {
        JoinSpec(Vec::new())
    }

    /// Pairs are kept sorted by right-hand column. Indices must be positive
    /// and no column may appear twice on the same side.
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self, RelError> {
        pairs.sort_by_key(|&(a, b)| (b, a));
        let lefts: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
        let rights: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        if lefts.len() != pairs.len() || rights.len() != pairs.len() || lefts.contains(&0) || rights.contains(&0) {
            return Err(RelError::InvalidJoinSpec(format!("{:?}", pairs)));
        }
        Ok(JoinSpec(pairs))
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fits(&self, left_arity: usize, right_arity: usize) -> bool {
        self.0.iter().all(|&(a, b)| a <= left_arity && b <= right_arity)
    }
}

impl fmt::Display for JoinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

/// `R1 ⋈_S R2`: all columns of `r1`, then the columns of `r2` not named in
/// `spec`, in `r2`'s order. An empty spec gives the cartesian product.
pub fn natural_join(r1: &Relation, r2: &Relation, spec: &JoinSpec) -> Result<Relation, RelError> {
    for &(a, b) in spec.pairs() {
        if a > r1.arity || b > r2.arity {
            return Err(RelError::IndexOutOfRange(a, b, r1.arity, r2.arity));
        }
    }
    let joined: Vec<usize> = spec.pairs().iter().map(|&(_, b)| b - 1).collect();
    let kept: Vec<usize> = (0..r2.arity).filter(|c| !joined.contains(c)).collect();
    let mut out = Relation::empty(r1.arity + r2.arity - spec.len());

    let mut index: HashMap<Vec<Element>, Vec<&Tuple>> = HashMap::new();
    for t2 in &r2.tuples {
        let key = joined.iter().map(|&c| t2[c]).collect();
        index.entry(key).or_default().push(t2);
    }
    for t1 in &r1.tuples {
        let key: Vec<Element> = spec.pairs().iter().map(|&(a, _)| t1[a - 1]).collect();
        if let Some(matches) = index.get(&key) {
            for t2 in matches {
                let mut t = t1.clone();
                t.extend(kept.iter().map(|&c| t2[c]));
                out.tuples.insert(t);
            }
        }
    }
    Ok(out)
}

/// `D^k \ R`.
pub fn complement(r: &Relation, domain: &Domain) -> Result<Relation, RelError> {
    if let Some(e) = r.max_element() {
        if e >= domain.len() {
            return Err(RelError::ForeignElement(e, domain.len()));
        }
    }
    Ok(Relation {
        arity: r.arity,
        tuples: domain.tuples(r.arity).filter(|t| !r.contains(t)).collect(),
    })
}

/// `π_{-m}`: drop column `m` (1-based) when `1 <= m <= k` and `k >= 2`;
/// truth-lift when `m = k = 1`; otherwise identity.
pub fn project_out(r: &Relation, m: usize) -> Relation {
    let k = r.arity;
    if m == 1 && k == 1 {
        return truth_lift(r);
    }
    if m == 0 || m > k || k < 2 {
        return r.clone();
    }
    Relation {
        arity: k - 1,
        tuples: r
            .tuples
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.remove(m - 1);
                t
            })
            .collect(),
    }
}

/// `f_<>`: `{<>}` for a nonempty relation, `∅` otherwise.
pub fn truth_lift(r: &Relation) -> Relation {
    Relation::from_bool(!r.is_empty())
}

/// Every join spec valid for the given arities, including the empty one.
pub fn join_specs(left_arity: usize, right_arity: usize) -> Vec<JoinSpec> {
    fn go(col: usize, right_arity: usize, left_arity: usize, used: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<JoinSpec>) {
        if col > right_arity {
            out.push(JoinSpec::new(acc.clone()).expect("distinct by construction"));
            return;
        }
        go(col + 1, right_arity, left_arity, used, acc, out);
        for a in 1..=left_arity {
            if used.contains(&a) {
                continue;
            }
            used.push(a);
            acc.push((a, col));
            go(col + 1, right_arity, left_arity, used, acc, out);
            acc.pop();
            used.pop();
        }
    }
    let mut out = Vec::new();
    go(1, right_arity, left_arity, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// `R1 ⪯ R2` iff some valid join spec gives `R1 ⋈_S R2 = R1`.
pub fn leq(r1: &Relation, r2: &Relation) -> bool {
    join_specs(r1.arity, r2.arity).iter().any(|s| {
        natural_join(r1, r2, s)
            .map(|j| j.same_tuples(r1))
            .unwrap_or(false)
    })
}

/// Whether permuting the columns of every tuple of `r2` by `perm` yields `r1`.
/// `perm` is 1-based: the permuted tuple's i-th entry is `t[perm[i]]`.
pub fn extensionally_equivalent(r1: &Relation, perm: &[usize], r2: &Relation) -> Result<bool, RelError> {
    if r1.arity != r2.arity {
        return Err(RelError::ArityMismatch(r1.arity, r2.arity));
    }
    let k = r2.arity;
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=k).collect::<Vec<_>>() {
        return Err(RelError::BadPermutation(k, perm.to_vec()));
    }
    let permuted: BTreeSet<Tuple> = r2
        .tuples
        .iter()
        .map(|t| perm.iter().map(|&p| t[p - 1]).collect())
        .collect();
    Ok(permuted == r1.tuples)
}

/// `R_=`, the diagonal of `D`.
pub fn identity_relation(domain: &Domain) -> Relation {
    Relation {
        arity: 2,
        tuples: domain.elements().map(|d| vec![d, d]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Domain {
        Domain::new(["a", "b"]).unwrap()
    }

    fn rel(d: &Domain, arity: usize, tuples: &[&[&str]]) -> Relation {
        Relation::from_names(d, arity, tuples.iter().map(|t| t.iter().copied())).unwrap()
    }

    #[test]
    fn domain_sorts_and_rejects_duplicates() {
        let d = Domain::new(["b", "a"]).unwrap();
        assert_eq!(d.names(), ["a", "b"]);
        assert_eq!(Domain::new(["a", "a"]), Err(RelError::DuplicateElement("a".into())));
        assert_eq!(Domain::new(Vec::<String>::new()), Err(RelError::EmptyDomain));
        assert_eq!(d.tuples(2).count(), 4);
        assert_eq!(d.tuples(0).collect::<Vec<_>>(), vec![Vec::<Element>::new()]);
        assert_eq!(Domain::of_size(30).unwrap().name(3), "e03");
    }

    #[test]
    fn join_small_example() {
        let d = ab();
        let r1 = rel(&d, 2, &[&["a", "b"]]);
        let r2 = rel(&d, 2, &[&["b", "b"]]);
        let s = JoinSpec::new(vec![(2, 1)]).unwrap();
        assert_eq!(natural_join(&r1, &r2, &s).unwrap(), rel(&d, 3, &[&["a", "b", "b"]]));
    }

    #[test]
    fn join_column_order_of_worked_example() {
        // phi(xi,xj,xk,xl,xm) & psi(xl,yi,xj,yj) with S = {(4,1),(2,3)}
        let d = Domain::of_size(7).unwrap();
        let r1 = Relation::new(5, [vec![0, 1, 2, 3, 4]]).unwrap();
        let r2 = Relation::new(4, [vec![3, 5, 1, 6], vec![3, 5, 0, 6]]).unwrap();
        let s = JoinSpec::new(vec![(4, 1), (2, 3)]).unwrap();
        assert_eq!(s.to_string(), "{(4,1),(2,3)}");
        let j = natural_join(&r1, &r2, &s).unwrap();
        assert_eq!(j.arity(), 7);
        assert_eq!(j, Relation::new(7, [vec![0, 1, 2, 3, 4, 5, 6]]).unwrap());
        assert_eq!(j.render_lines(&d), ["(a,b,c,d,e,f,g)"]);
    }

    #[test]
    fn join_rejects_out_of_range() {
        let r = Relation::empty(1);
        let s = JoinSpec::new(vec![(2, 1)]).unwrap();
        assert!(matches!(natural_join(&r, &r, &s), Err(RelError::IndexOutOfRange(..))));
        assert!(JoinSpec::new(vec![(1, 1), (1, 2)]).is_err());
    }

    #[test]
    fn join_units() {
        let d = ab();
        let r = rel(&d, 2, &[&["a", "b"], &["b", "a"]]);
        assert_eq!(natural_join(&r, &Relation::truth(), &JoinSpec::empty()).unwrap(), r);
        let z = natural_join(&r, &Relation::falsity(), &JoinSpec::empty()).unwrap();
        assert!(z.is_empty());
        assert_eq!(z.arity(), 2);
    }

    #[test]
    fn complement_cases() {
        let d = ab();
        assert_eq!(complement(&rel(&d, 1, &[&["a"]]), &d).unwrap(), rel(&d, 1, &[&["b"]]));
        assert_eq!(complement(&Relation::truth(), &d).unwrap(), Relation::falsity());
        assert_eq!(complement(&Relation::empty(2), &d).unwrap().len(), 4);
        let foreign = Relation::new(1, [vec![5]]).unwrap();
        assert_eq!(complement(&foreign, &d), Err(RelError::ForeignElement(5, 2)));
    }

    #[test]
    fn projection_cases() {
        let d = ab();
        let r5 = Relation::new(5, [vec![0, 1, 0, 1, 1], vec![0, 1, 1, 1, 1]]).unwrap();
        let p = project_out(&r5, 3);
        assert_eq!(p, Relation::new(4, [vec![0, 1, 1, 1]]).unwrap());
        assert_eq!(project_out(&rel(&d, 1, &[&["a"]]), 1), Relation::truth());
        assert_eq!(project_out(&Relation::empty(1), 1), Relation::falsity());
        assert_eq!(project_out(&r5, 0), r5);
        assert_eq!(project_out(&r5, 6), r5);
    }

    #[test]
    fn truth_lift_cases() {
        let d = ab();
        assert_eq!(truth_lift(&rel(&d, 2, &[&["a", "b"]])), Relation::truth());
        assert_eq!(truth_lift(&Relation::empty(3)), Relation::falsity());
        assert_eq!(truth_lift(&Relation::truth()), Relation::truth());
    }

    #[test]
    fn preorder_bounds_and_counterexample() {
        let d = ab();
        let r = rel(&d, 2, &[&["a", "b"]]);
        for k in 0..4 {
            assert!(leq(&Relation::empty(k), &r));
        }
        assert!(leq(&r, &Relation::truth()));
        assert!(!leq(&rel(&d, 1, &[&["a"]]), &rel(&d, 1, &[&["b"]])));
        assert!(leq(&rel(&d, 1, &[&["a"]]), &rel(&d, 1, &[&["a"], &["b"]])));
    }

    #[test]
    fn join_spec_enumeration_counts() {
        // partial injections from a j-set into a k-set
        assert_eq!(join_specs(1, 1).len(), 2);
        assert_eq!(join_specs(2, 2).len(), 7);
        assert_eq!(join_specs(3, 2).len(), 13);
        assert_eq!(join_specs(0, 3).len(), 1);
    }

    #[test]
    fn column_permutation() {
        let d = ab();
        let r1 = rel(&d, 2, &[&["a", "b"]]);
        let r2 = rel(&d, 2, &[&["b", "a"]]);
        assert!(extensionally_equivalent(&r1, &[2, 1], &r2).unwrap());
        assert!(extensionally_equivalent(&r1, &[1, 2], &r1).unwrap());
        assert!(!extensionally_equivalent(&r1, &[2, 1], &r1).unwrap());
        assert!(extensionally_equivalent(&r1, &[1, 1], &r1).is_err());
        assert!(extensionally_equivalent(&r1, &[1], &Relation::empty(1)).is_err());
    }

    #[test]
    fn identity_relation_is_diagonal() {
        let one = Domain::new(["a"]).unwrap();
        assert_eq!(identity_relation(&one), rel(&one, 2, &[&["a", "a"]]));
        let d = ab();
        let id = identity_relation(&d);
        assert_eq!(id, rel(&d, 2, &[&["a", "a"], &["b", "b"]]));
        assert!(!id.contains(&[0, 1]));
    }
}
