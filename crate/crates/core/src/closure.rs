use std::collections::BTreeSet;

use crate::formula::Formula;

/// Operands of every `|>` formula in `set`.
pub fn rhd_operands(set: &BTreeSet<Formula>) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for f in set {
        if let Formula::Rhd(a, b) = f {
            out.insert((**a).clone());
            out.insert((**b).clone());
        }
    }
    out
}

/// The least adequate set containing `x`: closed under subformulas and `~`,
/// with `false` among the `|>` operands, every `A |> B` over the operands,
/// and `[]~A` for every operand `A`.
pub fn adequate_closure<I: IntoIterator<Item = Formula>>(x: I) -> BTreeSet<Formula> {
    let mut set: BTreeSet<Formula> = BTreeSet::new();
    let mut operands: BTreeSet<Formula> = BTreeSet::new();
    let mut work: Vec<Formula> = x.into_iter().collect();
    work.push(Formula::rhd(Formula::Bot, Formula::Bot));

    while let Some(f) = work.pop() {
        if !set.insert(f.clone()) {
            continue;
        }
        work.push(f.neg_tilde());
        match &f {
            Formula::Bot | Formula::Var(_) => {}
            Formula::Box(a) => work.push((**a).clone()),
            Formula::Imp(a, b) => {
                work.push((**a).clone());
                work.push((**b).clone());
            }
            Formula::Rhd(a, b) => {
                for side in [a, b] {
                    let side = (**side).clone();
                    if operands.insert(side.clone()) {
                        work.push(side.clone());
                        work.push(Formula::boxed(side.neg_tilde()));
                        for other in operands.iter() {
                            work.push(Formula::rhd(side.clone(), other.clone()));
                            work.push(Formula::rhd(other.clone(), side.clone()));
                        }
                    }
                }
            }
        }
    }
    set
}
