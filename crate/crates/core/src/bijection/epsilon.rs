use serde::Serialize;

use super::tuple::{FourTupleLetter, TupleSet};
use crate::descent::Position;
use crate::word::Letter;

/// `f_{W,v}` on the letters of one value, as duplicate indices:
/// `images[i - 1]` is the duplicate index of the image of the `i`-th copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FMap {
    pub value: Letter,
    pub images: Vec<u32>,
}

impl FMap {
    pub fn image(&self, dup: u32) -> u32 {
        self.images[dup as usize - 1]
    }
}

/// Pairs the copies of `value` so that descent-top statuses are handed out in the
/// reversed order: with `x_i = 1` when the `i`-th copy is not a descent top, the
/// image of copy `i` is the next unused copy whose status equals `x_{k+1-i}`.
///
/// This is a bijection on the copies but in general not an involution (a 3-cycle
/// occurs on three copies with statuses non-top, top, top).
pub fn f_map(set: &TupleSet, value: Letter) -> FMap {
    let copies = set.restrict(value);
    let non_top: Vec<bool> = copies.iter().map(|t| !t.position.is_descent_top()).collect();
    let mut tops = copies.iter().filter(|t| t.position.is_descent_top()).map(|t| t.dup);
    let mut others = copies.iter().filter(|t| !t.position.is_descent_top()).map(|t| t.dup);
    let images = non_top
        .iter()
        .rev()
        .map(|&x| if x { others.next() } else { tops.next() }.expect("queues hold exactly the reversed counts"))
        .collect();
    FMap { value, images }
}

/// Descent-bottom status from `bottom_from`, descent-top status from `top_from`.
pub fn h_combine(bottom_from: Position, top_from: Position) -> Position {
    Position::from_status(bottom_from.is_descent_bottom(), top_from.is_descent_top())
}

/// `θ_W` applied to every element: value, duplicate index and embracing number are
/// kept; the position takes its bottom status from the element itself and its top
/// status from the element's `f` image.
pub fn epsilon(set: &TupleSet) -> TupleSet {
    TupleSet::new(theta(set).into_iter().map(|(_, u)| u).collect())
}

/// `(f image, θ image)` for each element, in the set's order.
pub(crate) fn theta(set: &TupleSet) -> Vec<(FourTupleLetter, FourTupleLetter)> {
    let maps: Vec<FMap> = set.values().into_iter().map(|v| f_map(set, v)).collect();
    set.elements()
        .iter()
        .map(|w| {
            let map = maps.iter().find(|m| m.value == w.value).expect("every value has a map");
            let image = *set.get(w.value, map.image(w.dup)).expect("images stay inside the set");
            let u = FourTupleLetter { position: h_combine(w.position, image.position), ..*w };
            (image, u)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::delta;
    use Position::*;

    fn ex2() -> TupleSet {
        TupleSet::new(vec![
            FourTupleLetter::new(4, 1, Closer, 0),
            FourTupleLetter::new(4, 2, Closer, 0),
            FourTupleLetter::new(4, 3, Outsider, 0),
            FourTupleLetter::new(1, 1, Opener, 0),
            FourTupleLetter::new(2, 1, Insider, 0),
            FourTupleLetter::new(2, 2, Outsider, 0),
            FourTupleLetter::new(3, 1, Opener, 1),
        ])
    }

    #[test]
    fn f_map_examples() {
        assert_eq!(f_map(&ex2(), 4).images, vec![3, 1, 2]);
        let w = delta(&[3, 5, 4, 4, 1, 1, 4, 2, 5, 3]);
        assert_eq!(f_map(&w, 4).images, vec![2, 3, 1]);
        assert_eq!(f_map(&w, 1).images, vec![1, 2]);
        assert_eq!(f_map(&w, 2).images, vec![1]);
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_combine(Closer, Outsider), Outsider);
        assert_eq!(h_combine(Insider, Outsider), Opener);
        assert_eq!(h_combine(Outsider, Outsider), Outsider);
        for p in Position::ALL {
            assert_eq!(h_combine(p, p), p);
        }
    }

    #[test]
    fn epsilon_of_small_example() {
        let want = TupleSet::new(vec![
            FourTupleLetter::new(4, 1, Outsider, 0),
            FourTupleLetter::new(4, 2, Closer, 0),
            FourTupleLetter::new(4, 3, Closer, 0),
            FourTupleLetter::new(1, 1, Opener, 0),
            FourTupleLetter::new(2, 1, Opener, 0),
            FourTupleLetter::new(2, 2, Closer, 0),
            FourTupleLetter::new(3, 1, Opener, 1),
        ]);
        assert_eq!(epsilon(&ex2()), want);
    }

    #[test]
    fn epsilon_of_long_example() {
        let u = epsilon(&delta(&[3, 5, 4, 4, 1, 1, 4, 2, 5, 3]));
        assert_eq!(u.get(4, 1).unwrap().position, Insider);
        assert_eq!(u.get(4, 2).unwrap().position, Closer);
        assert_eq!(u.get(4, 3).unwrap().position, Outsider);
        assert_eq!(u.get(4, 3).unwrap().r, 1);
    }

    #[test]
    fn distinct_letters_are_fixed() {
        let w = delta(&[3, 1, 4, 2, 6, 5]);
        assert_eq!(epsilon(&w), w);
    }
}
