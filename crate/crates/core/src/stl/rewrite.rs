use super::formula::Formula;

/// Replaces every `a RW_I b` with `a R_I (a \/ b)`.
pub fn rewrite_nonstrict_release(phi: &Formula) -> Formula {
    map_bottom_up(phi, &|f| match f {
        Formula::NonStrictRelease(i, a, b) => {
            let a = *a;
            let rhs = a.clone().or(*b);
            a.release(i, rhs)
        }
        other => other,
    })
}

/// Expands every derived operator into the core grammar
/// (`true`, atoms, `!`, `\/`, `X`, `U`, and `RW`, whose semantics are given
/// directly):
///
/// * `a /\ b` = `!(!a \/ !b)`
/// * `a -> b` = `!a \/ b`
/// * `F_I a` = `true U_I a`
/// * `G_I a` = `!F_I !a`
/// * `a R_I b` = `!(!a U_I !b)`
pub fn expand_abbreviations(phi: &Formula) -> Formula {
    map_bottom_up(phi, &|f| match f {
        Formula::And(a, b) => a.not().or(b.not()).not(),
        Formula::Implies(a, b) => a.not().or(*b),
        Formula::Eventually(i, a) => Formula::True.until(i, *a),
        Formula::Always(i, a) => Formula::True.until(i, a.not()).not(),
        Formula::Release(i, a, b) => a.not().until(i, b.not()).not(),
        other => other,
    })
}

fn map_bottom_up(phi: &Formula, f: &dyn Fn(Formula) -> Formula) -> Formula {
    let rec = |x: &Formula| Box::new(map_bottom_up(x, f));
    let rebuilt = match phi {
        Formula::True => Formula::True,
        Formula::Atom(a) => Formula::Atom(a.clone()),
        Formula::Not(a) => Formula::Not(rec(a)),
        Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
        Formula::And(a, b) => Formula::And(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
        Formula::Next(i, a) => Formula::Next(*i, rec(a)),
        Formula::Until(i, a, b) => Formula::Until(*i, rec(a), rec(b)),
        Formula::Release(i, a, b) => Formula::Release(*i, rec(a), rec(b)),
        Formula::NonStrictRelease(i, a, b) => Formula::NonStrictRelease(*i, rec(a), rec(b)),
        Formula::Eventually(i, a) => Formula::Eventually(*i, rec(a)),
        Formula::Always(i, a) => Formula::Always(*i, rec(a)),
    };
    f(rebuilt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stl::parse_formula;

    #[test]
    fn rewrites_nonstrict_release() {
        let f = parse_formula("a >= 0 RW b >= 0").unwrap();
        let want = parse_formula("a >= 0 R (a >= 0 \\/ b >= 0)").unwrap();
        assert_eq!(rewrite_nonstrict_release(&f), want);
    }

    #[test]
    fn leaves_other_formulas_alone() {
        let f = parse_formula("G (a >= 0 -> F[0,2] b >= 0) /\\ (a >= 1 U c >= 0)").unwrap();
        assert_eq!(rewrite_nonstrict_release(&f), f);
    }

    #[test]
    fn rewrites_nested_occurrences() {
        let f = parse_formula("(a >= 0 RW b >= 0) RW[1,2] c >= 0").unwrap();
        let inner = parse_formula("a >= 0 R (a >= 0 \\/ b >= 0)").unwrap();
        let c = parse_formula("c >= 0").unwrap();
        let iv = crate::stl::Interval::closed(1.0, 2.0).unwrap();
        let want = inner.clone().release(iv, inner.or(c));
        assert_eq!(rewrite_nonstrict_release(&f), want);
    }

    #[test]
    fn expansion_leaves_only_core_operators() {
        let f = parse_formula("G (a >= 0 -> F[0,2] b >= 0) /\\ (a >= 1 R c >= 0)").unwrap();
        let e = expand_abbreviations(&f);
        fn core_only(f: &Formula) -> bool {
            !matches!(
                f,
                Formula::And(..) | Formula::Implies(..) | Formula::Eventually(..) | Formula::Always(..) | Formula::Release(..)
            ) && f.children().into_iter().all(core_only)
        }
        assert!(core_only(&e));
    }
}
