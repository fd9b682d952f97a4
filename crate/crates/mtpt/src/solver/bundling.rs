//! Red/blue due-date coloring and bundle construction.
//!
//! A due date is red when its group's load alone exceeds the threshold
//! `⌊P^(1-δ)⌋`; red dates are processed individually by the solver. The
//! remaining dates are packed greedily from the top into bundles: maximal
//! runs of consecutive non-red dates whose combined load stays within the
//! threshold. Each bundle is later handled as a single unit.

use crate::instance::Instance;
use crate::rational::Rational;

use super::SolveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// Result of coloring: one color per due-date index plus the bundles as
/// disjoint inclusive index intervals in increasing order.
#[derive(Clone, Debug)]
pub struct Coloring {
    colors: Vec<Color>,
    bundles: Vec<(usize, usize)>,
    threshold: usize,
}

impl Coloring {
    pub fn color(&self, index: usize) -> Color {
        self.colors[index]
    }

    pub fn is_red(&self, index: usize) -> bool {
        self.colors[index] == Color::Red
    }

    /// Bundles as inclusive `(start, end)` index pairs, ascending.
    pub fn bundles(&self) -> &[(usize, usize)] {
        &self.bundles
    }

    /// The load threshold `⌊P^(1-δ)⌋` used for the coloring.
    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn red_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Red).count()
    }

    pub fn bundle_count(&self) -> usize {
        self.bundles.len()
    }

    /// Start index of the bundle ending at `index`, if any.
    pub fn bundle_starting_at_end(&self, index: usize) -> Option<usize> {
        self.bundles
            .binary_search_by_key(&index, |&(_, end)| end)
            .ok()
            .map(|pos| self.bundles[pos].0)
    }
}

/// Colors the due dates of `instance` and builds the bundles for the given
/// bundling parameter `delta ∈ (0, 1)`.
pub fn color_and_bundle(instance: &Instance, delta: Rational) -> Result<Coloring, SolveError> {
    if !delta.is_proper_fraction() {
        return Err(SolveError::InvalidDelta(delta));
    }
    let total = instance.total_load();
    let exponent = delta.one_minus().expect("proper fraction");
    let threshold = exponent
        .floor_pow(total)
        .ok_or(SolveError::ThresholdOverflow(total, delta))?;

    let loads: Vec<usize> = instance.groups().iter().map(|g| g.group_load).collect();
    let count = loads.len();
    let mut colors = vec![None; count];
    for (i, &load) in loads.iter().enumerate() {
        if load > threshold {
            colors[i] = Some(Color::Red);
        }
    }

    // Repeatedly bundle downward from the largest uncolored index. The valid
    // starts for a fixed end form a contiguous range, so the greedy extension
    // below finds the smallest one.
    let mut bundles = Vec::new();
    let mut m = count;
    while m > 0 {
        m -= 1;
        if colors[m].is_some() {
            continue;
        }
        let mut k = m;
        let mut sum = loads[m];
        while k > 0 && colors[k - 1].is_none() && sum + loads[k - 1] <= threshold {
            k -= 1;
            sum += loads[k];
        }
        debug_assert!(sum <= threshold, "a lone non-red group fits by definition");
        for c in &mut colors[k..=m] {
            *c = Some(Color::Blue);
        }
        bundles.push((k, m));
        m = k;
    }
    bundles.reverse();

    Ok(Coloring {
        colors: colors
            .into_iter()
            .map(|c| c.expect("all colored"))
            .collect(),
        bundles,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_instance, Family, Instance, Job};

    fn delta_half() -> Rational {
        Rational::new(1, 2).unwrap()
    }

    /// One job per group so group loads are exactly the given values.
    fn instance_with_loads(loads: &[usize]) -> Instance {
        Instance::new(
            loads
                .iter()
                .enumerate()
                .map(|(i, &p)| Job::new(p, 10 * (i + 1)))
                .collect(),
        )
    }

    #[test]
    fn hand_traced_bundling() {
        // P = 16, threshold 4: loads over 4 are red, the rest bundle from the top.
        let inst = instance_with_loads(&[5, 2, 2, 2, 5]);
        let coloring = color_and_bundle(&inst, delta_half()).unwrap();
        assert_eq!(coloring.threshold(), 4);
        assert!(coloring.is_red(0) && coloring.is_red(4));
        assert_eq!(coloring.bundles(), &[(1, 1), (2, 3)]);
        assert_eq!(coloring.red_count(), 2);
        assert_eq!(coloring.bundle_starting_at_end(3), Some(2));
        assert_eq!(coloring.bundle_starting_at_end(1), Some(1));
        assert_eq!(coloring.bundle_starting_at_end(2), None);
    }

    #[test]
    fn all_heavy_groups_are_red() {
        let inst = instance_with_loads(&[9, 9, 9]);
        let coloring = color_and_bundle(&inst, delta_half()).unwrap();
        assert_eq!(coloring.red_count(), 3);
        assert!(coloring.bundles().is_empty());
    }

    #[test]
    fn single_light_group_is_one_bundle() {
        // P = 1, threshold 1: the lone group fits and bundles alone.
        let inst = Instance::new(vec![Job::new(1, 9)]);
        let coloring = color_and_bundle(&inst, delta_half()).unwrap();
        assert_eq!(coloring.bundles(), &[(0, 0)]);
        assert_eq!(coloring.red_count(), 0);
    }

    #[test]
    fn light_group_next_to_a_red_one_bundles_alone() {
        // P = 7, threshold 2: the load-5 group is red, so the load-2 group
        // cannot extend downward and becomes a singleton bundle.
        let inst = instance_with_loads(&[5, 2]);
        let coloring = color_and_bundle(&inst, delta_half()).unwrap();
        assert!(coloring.is_red(0));
        assert_eq!(coloring.bundles(), &[(1, 1)]);
    }

    #[test]
    fn rejects_improper_delta() {
        let inst = instance_with_loads(&[1]);
        assert!(color_and_bundle(&inst, Rational::integer(1)).is_err());
        assert!(color_and_bundle(&inst, Rational::new(0, 3).unwrap()).is_err());
        assert!(color_and_bundle(&inst, Rational::new(5, 3).unwrap()).is_err());
    }

    #[test]
    fn empty_instance_has_nothing_to_color() {
        let coloring = color_and_bundle(&Instance::new(vec![]), delta_half()).unwrap();
        assert_eq!(coloring.red_count(), 0);
        assert!(coloring.bundles().is_empty());
    }

    #[test]
    fn counts_stay_within_the_proved_bounds() {
        for seed in 0..40 {
            for family in Family::ALL {
                let inst = generate_instance(60, 14, family, seed);
                let coloring = color_and_bundle(&inst, delta_half()).unwrap();
                let p = inst.total_load();
                let root = Rational::new(1, 2).unwrap().floor_pow(p).unwrap();
                let ceil_root = if root * root == p { root } else { root + 1 };
                assert!(coloring.red_count() <= root, "red bound at P={p}");
                assert!(
                    coloring.bundle_count() <= 3 * ceil_root,
                    "bundle bound at P={p}"
                );
                // bundles cover exactly the blue indices, disjointly and in order
                let mut covered = vec![false; inst.groups().len()];
                for &(k, m) in coloring.bundles() {
                    assert!(k <= m);
                    for (idx, c) in covered.iter_mut().enumerate().take(m + 1).skip(k) {
                        assert!(!*c);
                        *c = true;
                        assert!(!coloring.is_red(idx));
                    }
                    let load: usize = inst.groups()[k..=m].iter().map(|g| g.group_load).sum();
                    assert!(load <= coloring.threshold());
                }
                for (idx, &c) in covered.iter().enumerate() {
                    assert_eq!(c, !coloring.is_red(idx));
                }
            }
        }
    }
}
