//! Exclusion filters over side-length multisets.
//!
//! A lattice triangle's side lattice lengths constrain which centers can be
//! lattice points. Each filter here is a necessary condition; when every
//! multiset summing to a perimeter fails some applicable filter, that
//! perimeter is impossible and the failures are recorded as certificates that
//! can be replayed independently.
//!
//! Filters never look at triangles. Realizability beyond these necessary
//! conditions is the business of [`crate::constructions`] and
//! [`crate::enumerator`].

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::centers::Condition;
use crate::lattice::ShapeClass;
use crate::tangent::{halved_numerators, solve_pi_triples};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SideMultiset([u64; 3]);

impl SideMultiset {
    /// Sorts the lengths; `None` if any is zero.
    pub fn new(a: u64, b: u64, c: u64) -> Option<Self> {
        let mut s = [a, b, c];
        s.sort_unstable();
        (s[0] > 0).then_some(SideMultiset(s))
    }

    pub fn lengths(&self) -> [u64; 3] {
        self.0
    }

    pub fn perimeter(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn gcd(&self) -> u64 {
        self.0[0].gcd(&self.0[1]).gcd(&self.0[2])
    }
}

impl fmt::Display for SideMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// All non-decreasing positive triples summing to `l`; `None` when `l < 3`.
pub fn partitions(l: u64) -> Option<Vec<SideMultiset>> {
    if l < 3 {
        return None;
    }
    Some(partitions_unchecked(l))
}

fn partitions_unchecked(l: u64) -> Vec<SideMultiset> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a <= l {
        let mut b = a;
        while a + 2 * b <= l {
            out.push(SideMultiset([a, b, l - a - b]));
            b += 1;
        }
        a += 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Pairwise gcds of the side lengths all equal the gcd of all three.
    GcdLemma,
    /// Acute with lattice orthocenter: sides are never `(1, 1, m)`.
    OneOneM,
    /// Acute with lattice circumcenter: the middle side is at least 3.
    Mid3,
    /// Lattice centroid: if one side is a multiple of 3, all are.
    CentroidMod3,
    /// Lattice circumcenter: the perimeter is even.
    EvenPerimeter,
    /// Acute with lattice circumcenter: the angles are arctangents of
    /// `l_i / m_i` summing to pi, and each solution must leave the three
    /// sub-triangles at the orthocenter satisfying the gcd lemma.
    TangentSum,
    /// Right triangle with lattice centroid: every side is a multiple of 3.
    RightCentroidMod3,
    /// Lattice centroid and orthocenter: every side is a multiple of 3.
    GHmod3,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::GcdLemma => "GcdLemma",
            Rule::OneOneM => "OneOneM",
            Rule::Mid3 => "Mid3",
            Rule::CentroidMod3 => "CentroidMod3",
            Rule::EvenPerimeter => "EvenPerimeter",
            Rule::TangentSum => "TangentSum",
            Rule::RightCentroidMod3 => "RightCentroidMod3",
            Rule::GHmod3 => "GHmod3",
        }
    }

    /// Whether the rule is a valid necessary condition for the given cell.
    pub fn applies_to(self, condition: Condition, shape: ShapeClass) -> bool {
        let acute = shape == ShapeClass::Acute;
        match self {
            Rule::GcdLemma => true,
            Rule::OneOneM => acute && condition.needs_h() && condition != Condition::I,
            Rule::Mid3 | Rule::TangentSum => acute && condition.needs_f(),
            Rule::EvenPerimeter => condition.needs_f(),
            Rule::CentroidMod3 => condition.needs_g(),
            Rule::RightCentroidMod3 => shape == ShapeClass::Right && condition.needs_g(),
            Rule::GHmod3 => condition.needs_g() && condition.needs_h(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a certificate talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Multiset(SideMultiset),
    Perimeter(u64),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Multiset(s) => write!(f, "sides {s}"),
            Subject::Perimeter(l) => write!(f, "perimeter {l}"),
        }
    }
}

/// The cells a certificate rules out: a center condition, and a shape or all
/// shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scope {
    pub condition: Condition,
    pub shape: Option<ShapeClass>,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Some(s) => write!(f, "{}/{}", self.condition, s),
            None => write!(f, "{}/any", self.condition),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCertificate {
    pub rule: Rule,
    pub subject: Subject,
    pub scope: Scope,
    pub detail: String,
}

impl ExclusionCertificate {
    /// Re-runs the named rule on the subject; `true` if it still excludes it.
    pub fn replay(&self) -> bool {
        let shape_ok = match self.scope.shape {
            Some(s) => self.rule.applies_to(self.scope.condition, s),
            None => ShapeClass::ALL
                .iter()
                .all(|&s| self.rule.applies_to(self.scope.condition, s)),
        };
        if !shape_ok {
            return false;
        }
        let scope = self.scope;
        match (self.rule, self.subject) {
            (Rule::EvenPerimeter, Subject::Perimeter(l)) => even_perimeter_filter(l, scope).is_err(),
            (Rule::RightCentroidMod3, Subject::Perimeter(l)) => {
                right_centroid_possible(l).is_err()
            }
            (rule, Subject::Multiset(s)) => run_rule(rule, &s, scope).is_err(),
            _ => false,
        }
    }
}

impl fmt::Display for ExclusionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} excluded for {}: {}",
            self.rule, self.subject, self.scope, self.detail
        )
    }
}

pub type FilterResult = Result<(), ExclusionCertificate>;

fn exclude(rule: Rule, s: &SideMultiset, scope: Scope, detail: String) -> FilterResult {
    Err(ExclusionCertificate {
        rule,
        subject: Subject::Multiset(*s),
        scope,
        detail,
    })
}

fn any_scope(condition: Condition) -> Scope {
    Scope {
        condition,
        shape: None,
    }
}

fn acute_scope(condition: Condition) -> Scope {
    Scope {
        condition,
        shape: Some(ShapeClass::Acute),
    }
}

pub fn gcd_filter(s: &SideMultiset) -> FilterResult {
    gcd_filter_scoped(s, any_scope(Condition::H))
}

fn gcd_filter_scoped(s: &SideMultiset, scope: Scope) -> FilterResult {
    let [a, b, c] = s.0;
    let all = s.gcd();
    for (x, y) in [(a, b), (a, c), (b, c)] {
        let g = x.gcd(&y);
        if g != all {
            return exclude(
                Rule::GcdLemma,
                s,
                scope,
                format!("gcd({x},{y}) = {g} but gcd of all three is {all}"),
            );
        }
    }
    Ok(())
}

pub fn one_one_m_filter(s: &SideMultiset) -> FilterResult {
    one_one_m_scoped(s, acute_scope(Condition::H))
}

fn one_one_m_scoped(s: &SideMultiset, scope: Scope) -> FilterResult {
    if s.0[0] == 1 && s.0[1] == 1 {
        return exclude(
            Rule::OneOneM,
            s,
            scope,
            "two sides of lattice length 1 force both their opposite angles to at most pi/4"
                .to_string(),
        );
    }
    Ok(())
}

pub fn mid3_filter(s: &SideMultiset) -> FilterResult {
    mid3_scoped(s, acute_scope(Condition::F))
}

fn mid3_scoped(s: &SideMultiset, scope: Scope) -> FilterResult {
    if s.0[1] < 3 {
        return exclude(
            Rule::Mid3,
            s,
            scope,
            format!("middle side {} is below 3", s.0[1]),
        );
    }
    Ok(())
}

pub fn centroid_mod3_filter(s: &SideMultiset) -> FilterResult {
    centroid_mod3_scoped(s, any_scope(Condition::G))
}

fn centroid_mod3_scoped(s: &SideMultiset, scope: Scope) -> FilterResult {
    let k = s.0.iter().filter(|&&l| l % 3 == 0).count();
    if k == 1 || k == 2 {
        return exclude(
            Rule::CentroidMod3,
            s,
            scope,
            format!("{k} of the three sides are multiples of 3"),
        );
    }
    Ok(())
}

fn all_mod3_scoped(rule: Rule, s: &SideMultiset, scope: Scope) -> FilterResult {
    if let Some(l) = s.0.iter().find(|&&l| l % 3 != 0) {
        return exclude(rule, s, scope, format!("side {l} is not a multiple of 3"));
    }
    Ok(())
}

pub fn gh_mod3_filter(s: &SideMultiset) -> FilterResult {
    all_mod3_scoped(Rule::GHmod3, s, any_scope(Condition::GH))
}

/// Vertex-to-orthocenter lattice lengths implied by a solution `m` of the
/// halved tangent equation: `2 m_i` opposite an even side, `m_i` otherwise.
pub fn vertex_to_orthocenter_lengths(s: &SideMultiset, m: [u64; 3]) -> [u64; 3] {
    [0, 1, 2].map(|i| if s.0[i] % 2 == 0 { 2 * m[i] } else { m[i] })
}

/// The three triangles `H V_i V_j`, as side multisets. Vertex `i` is opposite
/// the side `lengths[i]`.
pub fn orthocenter_subtriangles(s: &SideMultiset, m: [u64; 3]) -> [SideMultiset; 3] {
    let d = vertex_to_orthocenter_lengths(s, m);
    [0, 1, 2].map(|k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        SideMultiset::new(d[i], d[j], s.0[k]).expect("lengths are positive")
    })
}

pub fn tangent_sum_filter(s: &SideMultiset) -> FilterResult {
    tangent_sum_scoped(s, acute_scope(Condition::F))
}

fn tangent_sum_scoped(s: &SideMultiset, scope: Scope) -> FilterResult {
    let numerators = halved_numerators(s.0);
    let solutions = solve_pi_triples(&numerators);
    let mut reasons = Vec::new();
    for m in &solutions {
        let killer = orthocenter_subtriangles(s, *m)
            .into_iter()
            .find(|sub| gcd_filter(sub).is_err());
        match killer {
            Some(sub) => reasons.push(format!(
                "m={:?} leaves sub-triangle {sub} violating the gcd lemma",
                m
            )),
            None => return Ok(()),
        }
    }
    let p = s.0.map(|l| if l % 2 == 0 { l / 2 } else { l });
    let detail = if solutions.is_empty() {
        format!(
            "arctan({}/m0)+arctan({}/m1)+arctan({}/m2) = pi has no solution",
            p[0], p[1], p[2]
        )
    } else {
        format!(
            "arctan({}/m0)+arctan({}/m1)+arctan({}/m2) = pi only for {}",
            p[0],
            p[1],
            p[2],
            reasons.join("; ")
        )
    };
    exclude(Rule::TangentSum, s, scope, detail)
}

pub fn even_perimeter_filter(l: u64, scope: Scope) -> FilterResult {
    if l % 2 == 1 {
        return Err(ExclusionCertificate {
            rule: Rule::EvenPerimeter,
            subject: Subject::Perimeter(l),
            scope,
            detail: format!("{l} is odd"),
        });
    }
    Ok(())
}

/// Right triangles with a lattice centroid have every side a multiple of 3,
/// hence perimeter a multiple of 3 and at least 9.
pub fn right_centroid_possible(l: u64) -> FilterResult {
    if l % 3 == 0 && l >= 9 {
        return Ok(());
    }
    let detail = if l % 3 != 0 {
        format!("{l} is not a multiple of 3")
    } else {
        format!("{l} < 9, the least sum of three positive multiples of 3")
    };
    Err(ExclusionCertificate {
        rule: Rule::RightCentroidMod3,
        subject: Subject::Perimeter(l),
        scope: Scope {
            condition: Condition::G,
            shape: Some(ShapeClass::Right),
        },
        detail,
    })
}

fn run_rule(rule: Rule, s: &SideMultiset, scope: Scope) -> FilterResult {
    match rule {
        Rule::GcdLemma => gcd_filter_scoped(s, scope),
        Rule::OneOneM => one_one_m_scoped(s, scope),
        Rule::Mid3 => mid3_scoped(s, scope),
        Rule::CentroidMod3 => centroid_mod3_scoped(s, scope),
        Rule::TangentSum => tangent_sum_scoped(s, scope),
        Rule::RightCentroidMod3 | Rule::GHmod3 => all_mod3_scoped(rule, s, scope),
        Rule::EvenPerimeter => even_perimeter_filter(s.perimeter(), scope),
    }
}

/// Rules tried on each multiset for a cell, in order. The first failing rule
/// supplies the certificate.
pub fn multiset_rules(condition: Condition, shape: ShapeClass) -> Vec<Rule> {
    if condition == Condition::I {
        return Vec::new();
    }
    let order = [
        Rule::OneOneM,
        Rule::Mid3,
        Rule::GcdLemma,
        Rule::CentroidMod3,
        Rule::RightCentroidMod3,
        Rule::GHmod3,
        Rule::TangentSum,
    ];
    order
        .into_iter()
        .filter(|r| r.applies_to(condition, shape))
        // OneOneM is subsumed by Mid3 under the circumcenter hypothesis
        .filter(|r| !(*r == Rule::OneOneM && condition.needs_f()))
        .collect()
}

/// Runs every applicable multiset rule; `Ok` if the multiset survives.
pub fn check_multiset(s: &SideMultiset, condition: Condition, shape: ShapeClass) -> FilterResult {
    let scope = Scope {
        condition,
        shape: Some(shape),
    };
    for rule in multiset_rules(condition, shape) {
        run_rule(rule, s, scope)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExclusionReport {
    ProvenImpossible(Vec<ExclusionCertificate>),
    /// The filters leave these multisets standing; nothing is claimed.
    Unknown(Vec<SideMultiset>),
}

impl ExclusionReport {
    pub fn is_proven_impossible(&self) -> bool {
        matches!(self, ExclusionReport::ProvenImpossible(_))
    }

    pub fn certificates(&self) -> &[ExclusionCertificate] {
        match self {
            ExclusionReport::ProvenImpossible(c) => c,
            ExclusionReport::Unknown(_) => &[],
        }
    }
}

/// Tries to prove that no triangle of lattice perimeter `l` has the given
/// shape with the given centers on the lattice.
pub fn exclusion_report(l: u64, condition: Condition, shape: ShapeClass) -> ExclusionReport {
    let scope = Scope {
        condition,
        shape: Some(shape),
    };
    if Rule::EvenPerimeter.applies_to(condition, shape) {
        if let Err(c) = even_perimeter_filter(l, scope) {
            return ExclusionReport::ProvenImpossible(vec![c]);
        }
    }
    let mut certificates = Vec::new();
    let mut survivors = Vec::new();
    for s in partitions_unchecked(l) {
        match check_multiset(&s, condition, shape) {
            Ok(()) => survivors.push(s),
            Err(c) => certificates.push(c),
        }
    }
    if survivors.is_empty() {
        ExclusionReport::ProvenImpossible(certificates)
    } else {
        ExclusionReport::Unknown(survivors)
    }
}

fn coprime(a: u64, b: u64) -> bool {
    a.gcd(&b) == 1
}

/// Distinct, pairwise coprime positive `x < y < z` with `x + y + z = n`.
pub fn prop1_witness(n: u64) -> Option<(u64, u64, u64)> {
    for x in 1..=n / 3 {
        for y in x + 1..=n.saturating_sub(x) / 2 {
            let z = n - x - y;
            if z > y && coprime(x, y) && coprime(x, z) && coprime(y, z) {
                return Some((x, y, z));
            }
        }
    }
    None
}

/// Pairwise coprime positive `x <= y <= z`, none divisible by 3, with
/// `x + y + z = n`.
pub fn prop2_witness(n: u64) -> Option<(u64, u64, u64)> {
    for x in 1..=n / 3 {
        for y in x..=n.saturating_sub(x) / 2 {
            let z = n - x - y;
            if z >= y
                && [x, y, z].iter().all(|v| v % 3 != 0)
                && coprime(x, y)
                && coprime(x, z)
                && coprime(y, z)
            {
                return Some((x, y, z));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(a: u64, b: u64, c: u64) -> SideMultiset {
        SideMultiset::new(a, b, c).unwrap()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions(5).unwrap(), vec![ms(1, 1, 3), ms(1, 2, 2)]);
        assert_eq!(partitions(3).unwrap(), vec![ms(1, 1, 1)]);
        let p10 = partitions(10).unwrap();
        assert_eq!(p10.len(), 8);
        assert!(p10.contains(&ms(2, 3, 5)));
        assert!(partitions(2).is_none());
    }

    #[test]
    fn filter_examples() {
        assert!(gcd_filter(&ms(1, 2, 2)).is_err());
        assert!(gcd_filter(&ms(1, 4, 5)).is_ok());
        assert!(gcd_filter(&ms(2, 4, 6)).is_ok());

        assert!(one_one_m_filter(&ms(1, 1, 4)).is_err());
        assert!(one_one_m_filter(&ms(1, 2, 3)).is_ok());
        assert!(one_one_m_filter(&ms(1, 1, 9)).is_err());

        assert!(mid3_filter(&ms(1, 2, 3)).is_err());
        assert!(mid3_filter(&ms(1, 3, 6)).is_ok());
        assert!(mid3_filter(&ms(3, 3, 4)).is_ok());

        assert!(centroid_mod3_filter(&ms(1, 1, 3)).is_err());
        assert!(centroid_mod3_filter(&ms(3, 3, 3)).is_ok());
        assert!(centroid_mod3_filter(&ms(1, 3, 7)).is_err());
    }

    #[test]
    fn tangent_sum_kills_the_two_survivors_at_ten() {
        let c = tangent_sum_filter(&ms(1, 4, 5)).unwrap_err();
        assert!(c.detail.contains("no solution"), "{}", c.detail);
        let c = tangent_sum_filter(&ms(2, 3, 5)).unwrap_err();
        assert!(c.detail.contains("[1, 2, 1]"), "{}", c.detail);
        assert!(c.replay());
    }

    #[test]
    fn subtriangles_of_the_235_configuration() {
        let s = ms(2, 3, 5);
        assert_eq!(vertex_to_orthocenter_lengths(&s, [1, 2, 1]), [2, 2, 1]);
        let subs = orthocenter_subtriangles(&s, [1, 2, 1]);
        // H V1 V2 (opposite V0) and H V0 V1 (opposite V2) violate the gcd lemma
        assert!(gcd_filter(&subs[0]).is_err());
        assert!(gcd_filter(&subs[1]).is_ok());
        assert!(gcd_filter(&subs[2]).is_err());
    }

    #[test]
    fn report_at_seven_for_acute_orthocenter() {
        let r = exclusion_report(7, Condition::H, ShapeClass::Acute);
        let certs = r.certificates();
        assert_eq!(certs.len(), 4);
        assert_eq!(certs[0].rule, Rule::OneOneM);
        assert!(certs[1..].iter().all(|c| c.rule == Rule::GcdLemma));
        assert!(certs.iter().all(|c| c.replay()));
    }

    #[test]
    fn report_at_eleven_for_centroid() {
        for shape in [ShapeClass::Acute, ShapeClass::Obtuse] {
            let r = exclusion_report(11, Condition::G, shape);
            let certs = r.certificates();
            assert_eq!(certs.len(), 10);
            let gcd = certs.iter().filter(|c| c.rule == Rule::GcdLemma).count();
            let mod3 = certs.iter().filter(|c| c.rule == Rule::CentroidMod3).count();
            assert_eq!((gcd, mod3), (8, 2));
        }
    }

    #[test]
    fn report_at_ten_for_acute_circumcenter() {
        let r = exclusion_report(10, Condition::F, ShapeClass::Acute);
        let certs = r.certificates();
        assert_eq!(certs.len(), 8);
        let tangent: Vec<_> = certs
            .iter()
            .filter(|c| c.rule == Rule::TangentSum)
            .map(|c| c.subject)
            .collect();
        assert_eq!(
            tangent,
            vec![Subject::Multiset(ms(1, 4, 5)), Subject::Multiset(ms(2, 3, 5))]
        );
        assert!(!exclusion_report(12, Condition::F, ShapeClass::Acute).is_proven_impossible());
    }

    #[test]
    fn odd_perimeter_with_circumcenter() {
        let r = exclusion_report(9, Condition::F, ShapeClass::Obtuse);
        assert_eq!(r.certificates()[0].rule, Rule::EvenPerimeter);
        assert!(r.certificates()[0].replay());
    }

    #[test]
    fn certificate_does_not_replay_outside_its_scope() {
        let mut c = one_one_m_filter(&ms(1, 1, 4)).unwrap_err();
        assert!(c.replay());
        c.scope.shape = Some(ShapeClass::Obtuse);
        assert!(!c.replay());
        c.scope.shape = None;
        assert!(!c.replay());
    }

    #[test]
    fn coprime_partition_witnesses() {
        assert_eq!(prop1_witness(6), Some((1, 2, 3)));
        assert_eq!(prop1_witness(7), None);
        let (x, y, z) = prop1_witness(12).unwrap();
        assert_eq!(x + y + z, 12);
        assert_eq!(prop2_witness(3), Some((1, 1, 1)));
        assert_eq!(prop2_witness(5), None);
        assert_eq!(prop2_witness(11), None);
    }

    #[test]
    fn right_centroid() {
        assert!(right_centroid_possible(9).is_ok());
        assert!(right_centroid_possible(6).is_err());
        assert!(right_centroid_possible(10).is_err());
        assert!(right_centroid_possible(6).unwrap_err().replay());
    }
}
