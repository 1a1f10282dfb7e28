use super::{Model, StateIndex};
use crate::scalar::Scalar;

/// States sharing one energy, sorted by `(nu, mu)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyLevel<S> {
    pub energy: S,
    pub states: Vec<StateIndex>,
}

/// All `(mu, nu)` with `E <= cutoff`, grouped by equal energy in increasing order.
pub fn physical_spectrum<S: Scalar>(model: &Model<S>, cutoff: &S) -> Vec<EnergyLevel<S>> {
    let mut states: Vec<(S, StateIndex)> = Vec::new();
    // E grows with both mu and nu, so each scan stops at the first state above the cutoff.
    let mut nu = 0;
    while model.energy(StateIndex::new(0, nu)) <= *cutoff {
        let mut mu = 0;
        loop {
            let idx = StateIndex::new(mu, nu);
            let e = model.energy(idx);
            if e > *cutoff {
                break;
            }
            states.push((e, idx));
            mu += 1;
        }
        nu += 1;
    }
    states.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("ordered energies"));
    let mut levels: Vec<EnergyLevel<S>> = Vec::new();
    for (e, idx) in states {
        match levels.last_mut() {
            Some(level) if level.energy.agrees(&e) => level.states.push(idx),
            _ => levels.push(EnergyLevel {
                energy: e,
                states: vec![idx],
            }),
        }
    }
    for level in &mut levels {
        level.states.sort_by_key(|s| (s.nu, s.mu));
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthomodels::ModelParams;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn one_param_levels() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let ground = physical_spectrum(&m, &q(15, 4));
        assert_eq!(ground.len(), 1);
        assert_eq!(ground[0].energy, q(15, 4));
        assert_eq!(ground[0].states, vec![StateIndex::new(0, 0)]);

        // E = 99/4 is the p=3 level itself, so the cutoff includes it.
        let levels = physical_spectrum(&m, &q(99, 4));
        let dims: Vec<usize> = levels.iter().map(|l| l.states.len()).collect();
        assert_eq!(dims, vec![1, 2, 3, 4]);
        for (p, l) in levels.iter().enumerate() {
            let t = q(p as i64 + 2, 1);
            assert_eq!(l.energy, &t * &t - q(1, 4));
        }
        let below = physical_spectrum(&m, &(q(99, 4) - q(1, 100)));
        assert_eq!(below.iter().map(|l| l.states.len()).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn below_ground_is_empty() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        assert!(physical_spectrum(&m, &q(1, 1)).is_empty());
    }
}
