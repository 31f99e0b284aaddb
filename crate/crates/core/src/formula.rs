use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Core formula tree. Every other connective is sugar over these five.
///
/// The derived ordering is structural: constructors compare in declaration
/// order, then children left to right. Sets of formulas print in this order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Var(Arc<str>),
    Imp(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Rhd(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn bot() -> Formula {
        Formula::Bot
    }

    pub fn top() -> Formula {
        Formula::imp(Formula::Bot, Formula::Bot)
    }

    pub fn var(name: impl AsRef<str>) -> Formula {
        Formula::Var(Arc::from(name.as_ref()))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    pub fn rhd(a: Formula, b: Formula) -> Formula {
        Formula::Rhd(Arc::new(a), Arc::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `(a -> (b -> false)) -> false`
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::imp(a, Formula::not(b)))
    }

    /// `(a -> false) -> b`
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::imp(Formula::not(a), b)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::not(Formula::boxed(Formula::not(a)))
    }

    /// `a & []a`
    pub fn boxdot(a: Formula) -> Formula {
        Formula::and(a.clone(), Formula::boxed(a))
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::top(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Imp(a, b) if **a == Formula::Bot && **b == Formula::Bot)
    }

    /// Returns `b` when `self` is `b -> false`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// Height of the core tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Var(_) => 0,
            Formula::Box(a) => 1 + a.depth(),
            Formula::Imp(a, b) | Formula::Rhd(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Var(_) => 1,
            Formula::Box(a) => 1 + a.size(),
            Formula::Imp(a, b) | Formula::Rhd(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn has_rhd(&self) -> bool {
        match self {
            Formula::Bot | Formula::Var(_) => false,
            Formula::Rhd(..) => true,
            Formula::Box(a) => a.has_rhd(),
            Formula::Imp(a, b) => a.has_rhd() || b.has_rhd(),
        }
    }

    pub fn occurs(&self, p: &str) -> bool {
        match self {
            Formula::Bot => false,
            Formula::Var(v) => &**v == p,
            Formula::Box(a) => a.occurs(p),
            Formula::Imp(a, b) | Formula::Rhd(a, b) => a.occurs(p) || b.occurs(p),
        }
    }

    pub fn variables(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Bot => {}
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Box(a) => a.collect_vars(out),
            Formula::Imp(a, b) | Formula::Rhd(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// `Sub(f)`, or `PSub(f)` when `proper` is set.
    pub fn subformulas(&self, proper: bool) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subs(&mut out);
        if proper {
            out.remove(self);
        }
        out
    }

    fn collect_subs(&self, out: &mut BTreeSet<Formula>) {
        if out.contains(self) {
            return;
        }
        out.insert(self.clone());
        match self {
            Formula::Bot | Formula::Var(_) => {}
            Formula::Box(a) => a.collect_subs(out),
            Formula::Imp(a, b) | Formula::Rhd(a, b) => {
                a.collect_subs(out);
                b.collect_subs(out);
            }
        }
    }

    /// Replaces every occurrence of `p` by `g`. Untouched subtrees are shared.
    pub fn substitute(&self, p: &str, g: &Formula) -> Formula {
        if !self.occurs(p) {
            return self.clone();
        }
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Var(_) => g.clone(),
            Formula::Box(a) => Formula::boxed(a.substitute(p, g)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(p, g), b.substitute(p, g)),
            Formula::Rhd(a, b) => Formula::rhd(a.substitute(p, g), b.substitute(p, g)),
        }
    }

    /// Replaces every occurrence of the subtree `from` by `to`.
    pub fn replace(&self, from: &Formula, to: &Formula) -> Formula {
        if self == from {
            return to.clone();
        }
        match self {
            Formula::Bot | Formula::Var(_) => self.clone(),
            Formula::Box(a) => Formula::boxed(a.replace(from, to)),
            Formula::Imp(a, b) => Formula::imp(a.replace(from, to), b.replace(from, to)),
            Formula::Rhd(a, b) => Formula::rhd(a.replace(from, to), b.replace(from, to)),
        }
    }

    /// Every occurrence of `p` lies under `[]` or `|>`. With `left_only`,
    /// additionally no subformula `B |> C` has `p` in `C`.
    pub fn is_modalized(&self, p: &str, left_only: bool) -> bool {
        if left_only && !self.right_free(p) {
            return false;
        }
        self.guarded(p, false)
    }

    fn guarded(&self, p: &str, under: bool) -> bool {
        match self {
            Formula::Bot => true,
            Formula::Var(v) => under || &**v != p,
            Formula::Box(a) => a.guarded(p, true),
            Formula::Rhd(a, b) => a.guarded(p, true) && b.guarded(p, true),
            Formula::Imp(a, b) => a.guarded(p, under) && b.guarded(p, under),
        }
    }

    /// No subformula `B |> C` has `p` in `C`.
    pub fn right_free(&self, p: &str) -> bool {
        match self {
            Formula::Bot | Formula::Var(_) => true,
            Formula::Box(a) => a.right_free(p),
            Formula::Imp(a, b) => a.right_free(p) && b.right_free(p),
            Formula::Rhd(a, b) => !b.occurs(p) && a.right_free(p),
        }
    }

    /// `~f`: strips one negation if present, adds one otherwise.
    pub fn neg_tilde(&self) -> Formula {
        match self.as_negation() {
            Some(b) => b.clone(),
            None => Formula::not(self.clone()),
        }
    }

    /// Maximal subformulas with a modal root that contain `p`, in canonical order.
    pub fn maximal_modal(&self, p: &str) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_maximal(p, &mut out);
        out
    }

    fn collect_maximal(&self, p: &str, out: &mut BTreeSet<Formula>) {
        if !self.occurs(p) {
            return;
        }
        match self {
            Formula::Box(_) | Formula::Rhd(..) => {
                out.insert(self.clone());
            }
            Formula::Imp(a, b) => {
                a.collect_maximal(p, out);
                b.collect_maximal(p, out);
            }
            Formula::Bot | Formula::Var(_) => {}
        }
    }

    /// Core-form text: only `false`, `true`, `->`, `[]`, `|>`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        write_core(self, 0, false, &mut s);
        s
    }

    /// Like [`Formula::render`] but shows `a -> false` as `~a` and `~[]~a` as `<>a`.
    pub fn render_pretty(&self) -> String {
        let mut s = String::new();
        write_core(self, 0, true, &mut s);
        s
    }
}

// Precedence levels: 0 implication, 1 rhd, 2 prefix or atom.
fn write_core(f: &Formula, ctx: u8, pretty: bool, out: &mut String) {
    if f.is_top() {
        out.push_str("true");
        return;
    }
    if pretty {
        if let Some(inner) = f.as_negation() {
            if let Formula::Box(b) = inner {
                if let Some(d) = b.as_negation() {
                    out.push_str("<>");
                    write_core(d, 2, pretty, out);
                    return;
                }
            }
            out.push('~');
            write_core(inner, 2, pretty, out);
            return;
        }
    }
    match f {
        Formula::Bot => out.push_str("false"),
        Formula::Var(v) => out.push_str(v),
        Formula::Box(a) => {
            out.push_str("[]");
            write_core(a, 2, pretty, out);
        }
        Formula::Rhd(a, b) => {
            if ctx > 1 {
                out.push('(');
            }
            write_core(a, 2, pretty, out);
            out.push_str(" |> ");
            write_core(b, 1, pretty, out);
            if ctx > 1 {
                out.push(')');
            }
        }
        Formula::Imp(a, b) => {
            if ctx > 0 {
                out.push('(');
            }
            write_core(a, 1, pretty, out);
            out.push_str(" -> ");
            write_core(b, 0, pretty, out);
            if ctx > 0 {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_pretty())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.render())
    }
}
