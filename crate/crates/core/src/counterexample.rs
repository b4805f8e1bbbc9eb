//! A free crossed complex whose image under an inclusion of generators is not
//! injective: `S` has a loop `x` and a 2-cell `b` with trivial boundary; `R`
//! adds a 2-cell `a` with `δa = x`. In `R` the loop acts trivially on `b`.

use std::fmt;
use std::sync::Arc;

use crate::crossed::text::parse_complex;
use crate::crossed::{BasisTable, FreeCrossedComplex, Morphism};

const SMALL: &str = "trunc 2\nobjects: p\nedge x : p -> p\ncell 2 b @ p : id(p)\n";
const LARGE: &str = "trunc 2\nobjects: p\nedge x : p -> p\ncell 2 a @ p : x\ncell 2 b @ p : id(p)\n";

#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub small: Arc<FreeCrossedComplex>,
    pub large: Arc<FreeCrossedComplex>,
    pub inclusion: Morphism,
    /// `b^x = b` in the small complex.
    pub fixed_in_small: bool,
    /// `b^x = b` in the large complex.
    pub fixed_in_large: bool,
    /// The images of `b^x` and `b` under the inclusion agree.
    pub images_agree: bool,
}

impl CounterexampleReport {
    /// The inclusion identifies two distinct elements.
    pub fn not_injective(&self) -> bool {
        !self.fixed_in_small && self.fixed_in_large && self.images_agree
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, l) = (&self.small, &self.large);
        writeln!(f, "C(S): normalizer {}, b^x = b: {}", s.normalizer().name(), self.fixed_in_small)?;
        writeln!(f, "C(R): normalizer {}, b^x = b: {}", l.normalizer().name(), self.fixed_in_large)?;
        writeln!(f, "C(i)(b^x) = C(i)(b): {}", self.images_agree)?;
        write!(f, "C(i) injective on C(S)_2: {}", !self.not_injective())
    }
}

pub fn run_counterexample() -> CounterexampleReport {
    let small = Arc::new(parse_complex(SMALL).expect("built-in complex"));
    let large = Arc::new(parse_complex(LARGE).expect("built-in complex"));
    let bl = large.find(2, "b").expect("b in R");
    let table = BasisTable {
        top: 2,
        objects: vec![0],
        edges: vec![large.edge(0)],
        higher: vec![vec![large.basis_element(2, bl)]],
    };
    let inclusion = Morphism::build(small.clone(), large.clone(), table).expect("inclusion is a morphism");
    let x = small.edge(0);
    let b = small.basis_element(2, 0);
    let bx = small.act(&b, &x).expect("b acted on by x");
    let fixed_in_small = small.equal(&bx, &b).expect("same dimension");
    let lb = large.basis_element(2, bl);
    let fixed_in_large = large.equal(&large.act(&lb, &large.edge(0)).expect("action"), &lb).expect("same dimension");
    let images_agree = large
        .equal(&inclusion.apply(&bx).expect("in range"), &inclusion.apply(&b).expect("in range"))
        .expect("same dimension");
    CounterexampleReport { small, large, inclusion, fixed_in_small, fixed_in_large, images_agree }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_is_not_injective() {
        let r = run_counterexample();
        assert_eq!(r.small.normalizer().name(), "free");
        assert!(!r.fixed_in_small);
        assert!(r.fixed_in_large);
        assert!(r.images_agree);
        assert!(r.not_injective());
    }
}
