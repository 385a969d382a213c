//! Standard bases of submodules of free modules over a localized
//! polynomial ring, via Mora's tangent cone normal form.
//!
//! Vectors are kept as sorted term lists under a [`ModuleOrder`]:
//! position-over-term for elimination, term-over-position by shifted
//! weighted degree for lengths and membership, and a global tracked order
//! whose bookkeeping components record how each vector was combined.
//! In term-over-position mode a highest-corner bound is detected
//! automatically and terms above it are discarded, which keeps Artinian
//! computations finite.

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MAX_VARS};

/// A module term `x^a·e_comp`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub comp: u32,
    pub mono: Monomial,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    /// Lower component first, then the local monomial order.
    Pot,
    /// Lower shifted weighted degree first, then monomial, then component.
    Top,
    /// A global order for computations over the polynomial ring itself:
    /// higher shifted degree first, then monomial, then component.
    /// Components from `active` on carry bookkeeping only and rank below
    /// every other term.
    Tracked { active: usize },
}

/// A module monomial order together with per-component degree shifts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleOrder {
    pub kind: OrderKind,
    pub shifts: Vec<i64>,
}

impl ModuleOrder {
    pub fn pot(shifts: Vec<i64>) -> Self {
        ModuleOrder { kind: OrderKind::Pot, shifts }
    }

    pub fn top(shifts: Vec<i64>) -> Self {
        ModuleOrder { kind: OrderKind::Top, shifts }
    }

    pub fn tracked(active: usize, shifts: Vec<i64>) -> Self {
        ModuleOrder { kind: OrderKind::Tracked { active }, shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn is_passive(&self, t: &Term) -> bool {
        matches!(self.kind, OrderKind::Tracked { active } if t.comp as usize >= active)
    }

    #[inline]
    pub fn sdeg(&self, t: &Term) -> i64 {
        t.mono.wdeg() as i64 + self.shifts[t.comp as usize]
    }

    /// `Greater` means `a` is the larger (more leading) term.
    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match self.kind {
            OrderKind::Pot => b.comp.cmp(&a.comp).then_with(|| a.mono.cmp(&b.mono)),
            OrderKind::Top => self.cmp_top(a, b),
            OrderKind::Tracked { active } => {
                let (pa, pb) = (a.comp as usize >= active, b.comp as usize >= active);
                match (pa, pb) {
                    (false, false) => self.sdeg(a).cmp(&self.sdeg(b)).then_with(|| a.mono.cmp(&b.mono)).then_with(|| b.comp.cmp(&a.comp)),
                    (true, true) => b.comp.cmp(&a.comp).then_with(|| a.mono.cmp(&b.mono)),
                    (false, true) => Ordering::Greater,
                    (true, false) => Ordering::Less,
                }
            }
        }
    }

    #[inline]
    fn cmp_top(&self, a: &Term, b: &Term) -> Ordering {
        self.sdeg(b).cmp(&self.sdeg(a)).then_with(|| a.mono.cmp(&b.mono)).then_with(|| b.comp.cmp(&a.comp))
    }
}

/// A vector as a strictly decreasing list of terms with nonzero coefficients.
pub type SVec = Vec<(Term, u32)>;

/// Arithmetic context shared by every vector in one computation.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub field: PrimeField,
    pub weights: Vec<u32>,
    pub order: ModuleOrder,
}

impl Ctx {
    pub fn new(field: PrimeField, weights: Vec<u32>, order: ModuleOrder) -> Self {
        assert!(weights.len() <= MAX_VARS);
        Ctx { field, weights, order }
    }

    pub fn sort(&self, terms: Vec<(Term, u32)>) -> SVec {
        let f = &self.field;
        let mut terms: Vec<(Term, u32)> = terms.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: SVec = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = f.add(*lc, c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        out
    }

    /// `a + c·m·b`.
    pub fn add_scaled(&self, a: &[(Term, u32)], b: &[(Term, u32)], c: u32, m: &Monomial) -> SVec {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term| Term { comp: t.comp, mono: t.mono.mul(m) };
        while i < a.len() && j < b.len() {
            let tb = shifted(&b[j].0);
            match self.order.cmp(&a[i].0, &tb) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb, f.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, f.mul(b[j].1, c));
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(t, x)| (shifted(t), f.mul(*x, c))));
        out
    }

    pub fn ecart(&self, v: &[(Term, u32)]) -> i64 {
        match v.first() {
            None => 0,
            Some((lt, _)) => {
                let top = v.iter().take_while(|(t, _)| !self.order.is_passive(t)).map(|(t, _)| self.order.sdeg(t)).max().unwrap_or_else(|| self.order.sdeg(lt));
                top - self.order.sdeg(lt)
            }
        }
    }

    pub fn monic(&self, v: &mut SVec) {
        if let Some(&(_, c)) = v.first() {
            if c != 1 {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                for t in v.iter_mut() {
                    t.1 = self.field.mul(t.1, inv);
                }
            }
        }
    }

    pub fn truncate(&self, v: &mut SVec, bound: Option<i64>) {
        if let Some(w) = bound {
            v.retain(|(t, _)| self.order.sdeg(t) < w);
        }
    }
}

#[derive(Clone, Debug)]
struct Elem {
    v: SVec,
    lt: Term,
    ecart: i64,
}

#[derive(Clone, Debug)]
enum Task {
    /// A vector to reduce, with a lower bound for its homogenized degree and
    /// the earlier forms kept by a deferred reduction.
    Gen(SVec, i64, Vec<Elem>),
    Pair(usize, usize, Monomial),
}

/// A standard basis of a submodule of `P^rank` (localized at the origin),
/// always containing the ring relations in every component.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ctx: Ctx,
    elems: Vec<Elem>,
    by_comp: Vec<Vec<usize>>,
    noether: Option<i64>,
    auto_noether: bool,
    zero_reductions: Vec<SVec>,
}

/// Box enumeration is abandoned beyond this many candidate monomials.
const ENUMERATION_LIMIT: u64 = 20_000_000;

impl StandardBasis {
    /// Computes a standard basis of the span of `known ∪ gens`, where `known`
    /// is assumed to already be a standard basis of its own span.
    pub fn compute(ctx: Ctx, known: Vec<SVec>, gens: Vec<SVec>, auto_noether: bool) -> Result<Self> {
        let rank = ctx.order.rank();
        let auto_noether = auto_noether && ctx.order.kind == OrderKind::Top;
        let mut sb = StandardBasis { ctx, elems: Vec::new(), by_comp: vec![Vec::new(); rank], noether: None, auto_noether, zero_reductions: Vec::new() };
        for mut k in known {
            if k.is_empty() {
                continue;
            }
            sb.ctx.monic(&mut k);
            sb.push_elem(k);
        }
        sb.refresh_noether();
        sb.run(gens, Vec::new())?;
        Ok(sb)
    }

    /// Wraps elements assumed to form a standard basis, without completing them.
    pub fn from_basis(ctx: Ctx, elems: Vec<SVec>) -> Self {
        let rank = ctx.order.rank();
        let auto_noether = ctx.order.kind == OrderKind::Top;
        let mut sb = StandardBasis { ctx, elems: Vec::new(), by_comp: vec![Vec::new(); rank], noether: None, auto_noether, zero_reductions: Vec::new() };
        for mut k in elems {
            if k.is_empty() {
                continue;
            }
            sb.ctx.monic(&mut k);
            sb.push_elem(k);
        }
        sb.refresh_noether();
        sb
    }

    /// Adds further generators, reusing the pairs already processed.
    pub fn extend(&self, gens: Vec<SVec>) -> Result<Self> {
        let mut sb = self.clone();
        sb.run(gens, Vec::new())?;
        Ok(sb)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.ctx.order.rank()
    }

    pub fn noether_bound(&self) -> Option<i64> {
        self.noether
    }

    /// Under a tracked order: the bookkeeping parts of every vector whose
    /// active part reduced to zero.
    pub fn zero_reductions(&self) -> &[SVec] {
        &self.zero_reductions
    }

    fn push_elem(&mut self, v: SVec) -> usize {
        let lt = v[0].0;
        let ecart = self.ctx.ecart(&v);
        let idx = self.elems.len();
        self.by_comp[lt.comp as usize].push(idx);
        self.elems.push(Elem { v, lt, ecart });
        idx
    }

    fn task_key(&self, t: &Task) -> i64 {
        match t {
            Task::Gen(v, d, _) => (self.ctx.order.sdeg(&v[0].0) + self.ctx.ecart(v)).max(*d),
            Task::Pair(i, j, l) => {
                let c = self.elems[*i].lt.comp;
                self.ctx.order.sdeg(&Term { comp: c, mono: *l }) + self.elems[*i].ecart.max(self.elems[*j].ecart)
            }
        }
    }

    fn run(&mut self, gens: Vec<SVec>, mut tasks: Vec<Task>) -> Result<()> {
        for mut g in gens {
            self.ctx.truncate(&mut g, self.noether);
            if !g.is_empty() {
                tasks.push(Task::Gen(g, 0, Vec::new()));
            }
        }
        let mut since_refresh = 0usize;
        while !tasks.is_empty() {
            let mut best = 0;
            let mut best_key = self.task_key(&tasks[0]);
            for (i, t) in tasks.iter().enumerate().skip(1) {
                let k = self.task_key(t);
                if k < best_key {
                    best = i;
                    best_key = k;
                }
            }
            let task = tasks.remove(best);
            let (h, extra) = match task {
                Task::Gen(v, _, extra) => (v, extra),
                Task::Pair(i, j, l) => (self.spoly(i, j, &l), Vec::new()),
            };
            let next = tasks.iter().map(|t| self.task_key(t)).min();
            let mut h = match self.lazy_normal_form(h, extra, best_key, next) {
                Ok(h) => h,
                Err((h, d, extra)) => {
                    tasks.push(Task::Gen(h, d, extra));
                    continue;
                }
            };
            if h.is_empty() {
                continue;
            }
            if self.ctx.order.is_passive(&h[0].0) {
                self.zero_reductions.push(h);
                continue;
            }
            self.ctx.monic(&mut h);
            let k = self.push_elem(h);
            self.update_pairs(k, &mut tasks);
            since_refresh += 1;
            let lt = self.elems[k].lt;
            if self.auto_noether && (lt.mono.pure_power().is_some() || since_refresh >= 16) {
                since_refresh = 0;
                let before = self.noether;
                self.refresh_noether();
                if self.noether != before {
                    self.apply_truncation(&mut tasks);
                }
            }
        }
        if self.auto_noether {
            let before = self.noether;
            self.refresh_noether();
            if self.noether != before {
                let mut none = Vec::new();
                self.apply_truncation(&mut none);
            }
        }
        Ok(())
    }

    fn spoly(&self, i: usize, j: usize, l: &Monomial) -> SVec {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let mi = a.lt.mono.quotient_of(l);
        let mj = b.lt.mono.quotient_of(l);
        // Both leading coefficients are one.
        let f = &self.ctx.field;
        let left = self.ctx.add_scaled(&[], &a.v, 1, &mi);
        let mut s = self.ctx.add_scaled(&left, &b.v, f.neg(1), &mj);
        self.ctx.truncate(&mut s, self.noether);
        s
    }

    fn update_pairs(&mut self, k: usize, tasks: &mut Vec<Task>) {
        let w = &self.ctx.weights;
        let lk = self.elems[k].lt;
        // Chain criterion on the pairs already queued.
        tasks.retain(|t| match t {
            Task::Gen(..) => true,
            Task::Pair(i, j, l) => {
                if self.elems[*i].lt.comp != lk.comp || !lk.mono.divides(l) {
                    return true;
                }
                let li = self.elems[*i].lt.mono.lcm(&lk.mono, w);
                let lj = self.elems[*j].lt.mono.lcm(&lk.mono, w);
                li == *l || lj == *l
            }
        });
        let mut fresh: Vec<(usize, Monomial)> = Vec::new();
        for &i in &self.by_comp[lk.comp as usize] {
            if i == k {
                continue;
            }
            fresh.push((i, self.elems[i].lt.mono.lcm(&lk.mono, w)));
        }
        let mut keep: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (i, l)) in fresh.iter().enumerate() {
            let dominated = fresh.iter().enumerate().any(|(jdx, (_, l2))| {
                jdx != idx && l2.divides(l) && (l2 != l || jdx < idx)
            });
            if !dominated {
                keep.push((*i, *l));
            }
        }
        for (i, l) in keep {
            tasks.push(Task::Pair(i, k, l));
        }
    }

    fn apply_truncation(&mut self, tasks: &mut Vec<Task>) {
        let w = self.noether;
        for idx in 0..self.elems.len() {
            // The leading term is kept even above the corner so that the
            // exported basis still generates the whole submodule.
            let mut v = std::mem::take(&mut self.elems[idx].v);
            let head = v[0];
            self.ctx.truncate(&mut v, w);
            if v.first().map(|t| t.0) != Some(head.0) {
                v.insert(0, head);
            }
            self.elems[idx].ecart = self.ctx.ecart(&v);
            self.elems[idx].v = v;
        }
        for t in tasks.iter_mut() {
            if let Task::Gen(v, ..) = t {
                self.ctx.truncate(v, w);
            }
        }
        tasks.retain(|t| match t {
            Task::Gen(v, ..) => !v.is_empty(),
            Task::Pair(..) => true,
        });
    }

    /// Mora's normal form of `h` at homogenized degree `d`. A reduction that
    /// would lift the degree past `next`, the smallest pending degree, is
    /// deferred: the partly reduced vector comes back as `Err` with its new degree.
    fn lazy_normal_form(&self, mut h: SVec, mut extra: Vec<Elem>, mut d: i64, next: Option<i64>) -> std::result::Result<SVec, (SVec, i64, Vec<Elem>)> {
        self.ctx.truncate(&mut h, self.noether);
        let f = &self.ctx.field;
        while let Some(&(lt, lc)) = h.first() {
            let Some(g) = self.best_reducer(&lt, &extra) else { break };
            let lifted = self.ctx.order.sdeg(&lt) + g.ecart;
            if lifted > d {
                if next.is_some_and(|n| n < lifted) {
                    return Err((h, lifted, extra));
                }
                d = lifted;
            }
            let g = g.clone();
            let eh = self.ctx.ecart(&h);
            if g.ecart > eh {
                let mut hv = h.clone();
                self.ctx.monic(&mut hv);
                extra.push(Elem { v: hv, lt, ecart: eh });
            }
            let m = g.lt.mono.quotient_of(&lt.mono);
            let c = f.neg(f.mul(lc, f.inv(g.v[0].1).expect("nonzero")));
            h = self.ctx.add_scaled(&h, &g.v, c, &m);
            self.ctx.truncate(&mut h, self.noether);
        }
        Ok(h)
    }

    /// The reducer of least ecart whose leading term divides `lt`.
    fn best_reducer<'a>(&'a self, lt: &Term, extra: &'a [Elem]) -> Option<&'a Elem> {
        self.by_comp[lt.comp as usize]
            .iter()
            .map(|&i| &self.elems[i])
            .chain(extra.iter().filter(|e| e.lt.comp == lt.comp))
            .filter(|e| e.lt.mono.divides(&lt.mono))
            .min_by_key(|e| e.ecart)
    }

    /// Mora's normal form: the result is zero iff `v` lies in the submodule.
    pub fn normal_form(&self, mut h: SVec) -> SVec {
        self.ctx.truncate(&mut h, self.noether);
        let mut extra: Vec<Elem> = Vec::new();
        let f = &self.ctx.field;
        while let Some(&(lt, lc)) = h.first() {
            let mut best: Option<(&Elem, i64)> = None;
            for &i in &self.by_comp[lt.comp as usize] {
                let e = &self.elems[i];
                if e.lt.mono.divides(&lt.mono) && best.is_none_or(|(_, be)| e.ecart < be) {
                    best = Some((e, e.ecart));
                }
            }
            for e in &extra {
                if e.lt.comp == lt.comp && e.lt.mono.divides(&lt.mono) && best.is_none_or(|(_, be)| e.ecart < be) {
                    best = Some((e, e.ecart));
                }
            }
            let Some((g, ge)) = best else { break };
            let g = g.clone();
            let eh = self.ctx.ecart(&h);
            if ge > eh {
                let inv = f.inv(lc).expect("nonzero");
                let mut hv = h.clone();
                for t in hv.iter_mut() {
                    t.1 = f.mul(t.1, inv);
                }
                extra.push(Elem { v: hv, lt, ecart: eh });
            }
            let m = g.lt.mono.quotient_of(&lt.mono);
            let glc = g.v[0].1;
            let c = f.neg(f.mul(lc, f.inv(glc).expect("nonzero")));
            h = self.ctx.add_scaled(&h, &g.v, c, &m);
            self.ctx.truncate(&mut h, self.noether);
        }
        h
    }

    /// Exact remainder of `h` modulo the submodule, written in standard terms.
    /// Needs a highest corner: below it plain reduction terminates, so no
    /// unit multiplier is introduced.
    pub fn reduce_completely(&self, mut h: SVec) -> Option<SVec> {
        let w = self.noether?;
        let f = &self.ctx.field;
        let mut out: SVec = Vec::new();
        self.ctx.truncate(&mut h, Some(w));
        while let Some(&(lt, lc)) = h.first() {
            match self.best_reducer(&lt, &[]) {
                Some(g) => {
                    let m = g.lt.mono.quotient_of(&lt.mono);
                    h = self.ctx.add_scaled(&h, &g.v, f.neg(lc), &m);
                    self.ctx.truncate(&mut h, Some(w));
                }
                None => out.push(h.remove(0)),
            }
        }
        Some(out)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.normal_form(v.clone()).is_empty()
    }

    /// Minimal set of leading terms, one per minimal generator of the leading module.
    pub fn leading_terms(&self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        for c in 0..self.rank() {
            let mut lts: Vec<Monomial> = self.by_comp[c]
                .iter()
                .map(|&i| self.elems[i].lt.mono)
                .collect();
            lts.sort();
            lts.dedup();
            let minimal: Vec<Monomial> = lts
                .iter()
                .filter(|m| !lts.iter().any(|o| o != *m && o.divides(m)))
                .copied()
                .collect();
            out.extend(minimal.into_iter().map(|mono| Term { comp: c as u32, mono }));
        }
        out
    }

    /// A reduced set of generators: elements whose leading term is minimal.
    pub fn minimal_elements(&self) -> Vec<SVec> {
        let mut out = Vec::new();
        for c in 0..self.rank() {
            let ids: Vec<usize> = self.by_comp[c].clone();
            for (pos, &i) in ids.iter().enumerate() {
                let mi = self.elems[i].lt.mono;
                let redundant = ids.iter().enumerate().any(|(q, &j)| {
                    let mj = self.elems[j].lt.mono;
                    mj.divides(&mi) && (mj != mi || q < pos)
                });
                if !redundant {
                    out.push(self.elems[i].v.clone());
                }
            }
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = &SVec> {
        self.elems.iter().map(|e| &e.v)
    }

    fn comp_leading(&self, c: usize) -> Vec<Monomial> {
        self.by_comp[c].iter().map(|&i| self.elems[i].lt.mono).collect()
    }

    /// Standard monomials of one component, or `None` when there are infinitely many.
    /// Terms at or beyond the highest-corner bound count as members.
    fn standard_monomials(&self, c: usize) -> Option<Vec<Monomial>> {
        let n = self.ctx.weights.len();
        let lts = self.comp_leading(c);
        let cap = self.noether.map(|w| w - self.ctx.order.shifts[c]);
        let mut bounds = vec![u16::MAX; n];
        if let Some(cap) = cap {
            if cap <= 0 {
                return Some(Vec::new());
            }
            for (i, b) in bounds.iter_mut().enumerate() {
                let wi = self.ctx.weights[i] as i64;
                *b = ((cap + wi - 1) / wi).min(u16::MAX as i64 - 1) as u16;
            }
        }
        for m in &lts {
            if m.is_one() {
                return Some(Vec::new());
            }
            if let Some((i, a)) = m.pure_power() {
                bounds[i] = bounds[i].min(a);
            }
        }
        if bounds.contains(&u16::MAX) {
            return None;
        }
        let size: u64 = bounds.iter().map(|&b| b as u64).product();
        if size > ENUMERATION_LIMIT {
            return None;
        }
        let mut out = Vec::new();
        let mut e = vec![0u16; n];
        loop {
            let m = Monomial::from_exponents(&e, &self.ctx.weights);
            if cap.is_none_or(|cap| (m.wdeg() as i64) < cap) && !lts.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Some(out);
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    fn refresh_noether(&mut self) {
        if !self.auto_noether {
            return;
        }
        let mut w: Option<i64> = None;
        for c in 0..self.rank() {
            let Some(std) = self.standard_monomials(c) else { return };
            let wc = std.iter().map(|m| m.wdeg() as i64 + 1).max().unwrap_or(0) + self.ctx.order.shifts[c];
            w = Some(w.map_or(wc, |x: i64| x.max(wc)));
        }
        if let Some(w) = w {
            if self.noether.is_none_or(|old| w < old) {
                self.noether = Some(w);
            }
        }
    }

    /// Length of the quotient `P^rank / M` (localized), if finite.
    pub fn colength(&self) -> Option<u64> {
        let mut total = 0u64;
        for c in 0..self.rank() {
            total += self.standard_monomials(c)?.len() as u64;
        }
        Some(total)
    }

    /// Standard monomials in every component, if the quotient has finite length.
    pub fn standard_terms(&self) -> Option<Vec<Term>> {
        let mut out = Vec::new();
        for c in 0..self.rank() {
            out.extend(self.standard_monomials(c)?.into_iter().map(|mono| Term { comp: c as u32, mono }));
        }
        Some(out)
    }
}

/// Failure helper for callers that require finite colength.
pub fn require_finite(v: Option<u64>) -> Result<u64> {
    v.ok_or(AlgebraError::NotMPrimary)
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: [u32; 3] = [2, 2, 1];

    fn ctx(kind: OrderKind, rank: usize) -> Ctx {
        Ctx::new(PrimeField::new(32003).unwrap(), W.to_vec(), ModuleOrder { kind, shifts: vec![0; rank] })
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e, &W)
    }

    fn v(c: &Ctx, terms: &[(u32, &[u16], i64)]) -> SVec {
        c.sort(terms.iter().map(|&(comp, e, k)| (Term { comp, mono: mono(e) }, c.field.from_i64(k))).collect())
    }

    #[test]
    fn relation_reduces_to_zero_modulo_parameters() {
        let c = ctx(OrderKind::Top, 1);
        let gens = vec![v(&c, &[(0, &[1, 0, 0], 1)]), v(&c, &[(0, &[0, 1, 0], 1)]), v(&c, &[(0, &[0, 0, 2], 1)])];
        let sb = StandardBasis::compute(c.clone(), vec![], gens, true).unwrap();
        let rel = v(&c, &[(0, &[2, 0, 0], 1), (0, &[0, 2, 0], 1), (0, &[0, 0, 4], 1)]);
        assert!(sb.contains(&rel));
        assert_eq!(sb.colength(), Some(2));
    }

    #[test]
    fn units_generate_everything() {
        let c = ctx(OrderKind::Top, 1);
        // 1 + x is a unit in the local ring.
        let g = v(&c, &[(0, &[0, 0, 0], 1), (0, &[1, 0, 0], 1)]);
        let sb = StandardBasis::compute(c.clone(), vec![], vec![g], true).unwrap();
        assert_eq!(sb.colength(), Some(0));
        assert!(sb.contains(&v(&c, &[(0, &[0, 0, 0], 5)])));
    }

    #[test]
    fn quotient_length_of_hypersurface_with_parameters() {
        let c = ctx(OrderKind::Top, 1);
        let rel = v(&c, &[(0, &[2, 0, 0], 1), (0, &[0, 2, 0], 1), (0, &[0, 0, 4], 1)]);
        let gens = vec![rel, v(&c, &[(0, &[1, 0, 0], 1)]), v(&c, &[(0, &[0, 1, 0], 1)])];
        let sb = StandardBasis::compute(c, vec![], gens, true).unwrap();
        assert_eq!(sb.colength(), Some(4));
    }

    #[test]
    fn mora_handles_non_homogeneous_input() {
        // (x - y^2) and (y - x^3) generate the maximal ideal locally in two variables.
        let c = Ctx::new(PrimeField::new(32003).unwrap(), vec![1, 1], ModuleOrder::top(vec![0]));
        let m = |e: &[u16]| Monomial::from_exponents(e, &[1, 1]);
        let a = c.sort(vec![(Term { comp: 0, mono: m(&[1, 0]) }, 1), (Term { comp: 0, mono: m(&[0, 2]) }, 32002)]);
        let b = c.sort(vec![(Term { comp: 0, mono: m(&[0, 1]) }, 1), (Term { comp: 0, mono: m(&[3, 0]) }, 32002)]);
        let sb = StandardBasis::compute(c, vec![], vec![a, b], true).unwrap();
        assert_eq!(sb.colength(), Some(1));
    }

    #[test]
    fn pot_elimination_finds_koszul_syzygy() {
        // Generators (x, e1), (y, e2) in P ⊕ P^2: the syzygy y·e1 - x·e2 appears.
        let c = ctx(OrderKind::Pot, 3);
        let g1 = v(&c, &[(0, &[1, 0, 0], 1), (1, &[0, 0, 0], 1)]);
        let g2 = v(&c, &[(0, &[0, 1, 0], 1), (2, &[0, 0, 0], 1)]);
        let sb = StandardBasis::compute(c.clone(), vec![], vec![g1, g2], false).unwrap();
        let syz: Vec<&SVec> = sb.elements().filter(|e| e[0].0.comp >= 1).collect();
        assert_eq!(syz.len(), 1);
        let s = syz[0];
        assert!(s.iter().all(|(t, _)| t.comp >= 1));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn tracked_order_records_zero_reductions() {
        // x·e1 and y·e2 with bookkeeping: y·e1 - x·e2 shows up as a zero reduction.
        let c = Ctx::new(PrimeField::new(32003).unwrap(), W.to_vec(), ModuleOrder::tracked(1, vec![0; 3]));
        let g1 = v(&c, &[(0, &[1, 0, 0], 1), (1, &[0, 0, 0], 1)]);
        let g2 = v(&c, &[(0, &[0, 1, 0], 1), (2, &[0, 0, 0], 1)]);
        assert_eq!(g1[0].0.comp, 0);
        let sb = StandardBasis::compute(c.clone(), vec![], vec![g1, g2], false).unwrap();
        assert_eq!(sb.zero_reductions().len(), 1);
        let z = &sb.zero_reductions()[0];
        assert!(z.iter().all(|(t, _)| c.order.is_passive(t)));
        assert_eq!(z.len(), 2);
        assert_eq!(c.ecart(&v(&c, &[(0, &[1, 0, 0], 1), (1, &[0, 0, 5], 1)])), 0);
    }
}
