//! Randomized property suite over generated instances: structural facts
//! about balanced cycles and shared-path graphs, agreement between the
//! independent computation routes, and the containment chain between the
//! classical bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use wog_toric_core::graver::{
    balanced_cycle_generator, circuits, graver_basis, graver_oracle, is_primitive,
    theta_unbalanced_generator,
};
use wog_toric_core::groebner::{is_reduced_gb, universal_gb};
use wog_toric_core::instances::{
    balanced_cycle, random_theta, shared_path_family, single_source_balanced_cycle, SplitMix,
};
use wog_toric_core::linalg::lattice_coordinates;
use wog_toric_core::markov::{markov_by_subset_enumeration, universal_markov};
use wog_toric_core::robustness::{computational_report, structural_classification};
use wog_toric_core::{Limits, TermOrder, WeightedOrientedGraph};

fn limits() -> Limits {
    Limits::default()
}

/// Oracle bound covering every Graver element plus margin, derived from the
/// elements' coordinates in the kernel lattice basis.
fn covering_bound(graph: &WeightedOrientedGraph) -> u64 {
    let matrix = graph.incidence_matrix();
    let lattice = matrix.integer_kernel_basis();
    let graver = graver_basis(&matrix, &limits()).unwrap();
    let mut bound = BigInt::one();
    for e in graver.elements() {
        let coords = lattice_coordinates(&lattice, e.entries())
            .expect("graver elements lie in the kernel lattice");
        for c in coords {
            let a = c.magnitude().clone();
            if BigInt::from(a.clone()) > bound {
                bound = BigInt::from(a);
            }
        }
    }
    u64::try_from(&bound).unwrap() + 2
}

#[test]
fn outer_cycle_of_two_balanced_cycles_is_balanced() {
    let mut rng = SplitMix(0xA001);
    for _ in 0..1000 {
        let k = rng.range(1, 3) as usize;
        let g = shared_path_family(&mut rng, k, &[true, true], 7);
        let d = g.shared_path_decomposition().unwrap().unwrap();
        assert!(d.balanced.iter().all(|&b| b));
        let outer = g.outer_cycle(&d.cycles[0], &d.cycles[1], &d.path).unwrap();
        assert!(g.is_balanced(&outer));
    }
}

#[test]
fn kernel_dimension_counts_balanced_cycles() {
    let mut rng = SplitMix(0xA002);
    for trial in 0..200usize {
        let n = 2 + trial % 3;
        let flags = vec![true; n];
        let k = rng.range(1, 2) as usize;
        let g = shared_path_family(&mut rng, k, &flags, 6);
        assert_eq!(g.incidence_matrix().kernel_dimension(), n);
    }
}

#[test]
fn kernel_dimension_drops_with_one_unbalanced_cycle() {
    let mut rng = SplitMix(0xA003);
    for trial in 0..200usize {
        let n = 2 + trial % 3;
        let mut flags = vec![true; n];
        flags[trial % n] = false;
        let k = rng.range(1, 2) as usize;
        let g = shared_path_family(&mut rng, k, &flags, 6);
        assert_eq!(g.incidence_matrix().kernel_dimension(), n - 1);
    }
}

#[test]
fn minor_formula_generator_lies_in_kernel_with_content_one() {
    // the minor route is cross-checked against the rational kernel route
    // inside balanced_cycle_generator on every call
    let mut rng = SplitMix(0xA004);
    for _ in 0..500 {
        let g = balanced_cycle(&mut rng, 4, 12, 9);
        let cycles = g.enumerate_cycles(&limits()).unwrap();
        let gen = balanced_cycle_generator(&g, &cycles[0]).unwrap();
        let matrix = g.incidence_matrix();
        assert!(matrix.annihilates(gen.entries()));
        let content = wog_toric_core::linalg::content(gen.entries());
        assert!(content.is_one());
    }
}

#[test]
fn basis_containment_chain() {
    // circuits ⊆ universal lower ⊆ universal upper = Graver, Markov ⊆ Graver
    let mut rng = SplitMix(0xA005);
    for _ in 0..40 {
        let g = random_theta(&mut rng, 5);
        let matrix = g.incidence_matrix();
        let graver = graver_basis(&matrix, &limits()).unwrap();
        let c = circuits(&matrix, &limits()).unwrap();
        let u = universal_gb(&matrix, Some(&g), &limits()).unwrap();
        let markov = universal_markov(&matrix, &limits()).unwrap();
        assert!(c.is_subset_of(&u.lower));
        assert!(u.lower.is_subset_of(&u.upper));
        assert!(u.upper.same_elements(&graver));
        assert!(markov.is_subset_of(&graver));
    }
}

#[test]
fn single_source_cycles_have_unit_entries_on_source_edges() {
    let mut rng = SplitMix(0xA006);
    for _ in 0..200 {
        let (g, _) = single_source_balanced_cycle(&mut rng, 4, 12, 9);
        let cycles = g.enumerate_cycles(&limits()).unwrap();
        let cycle = &cycles[0];
        let (sources, _) = g.cycle_sources_sinks(cycle);
        assert_eq!(sources.len(), 1);
        let v = sources[0];
        let gen = balanced_cycle_generator(&g, cycle).unwrap();
        for (e, edge) in g.edges().iter().enumerate() {
            if edge.tail == v || edge.head == v {
                assert!(gen.entries()[e].magnitude().is_one());
            }
        }
    }
}

#[test]
fn multi_source_cycles_admit_coprime_source_edge_pairs() {
    let mut rng = SplitMix(0xA007);
    let mut checked = 0;
    while checked < 200 {
        let g = balanced_cycle(&mut rng, 6, 12, 9);
        let cycles = g.enumerate_cycles(&limits()).unwrap();
        let cycle = &cycles[0];
        let (sources, _) = g.cycle_sources_sinks(cycle);
        if sources.len() < 2 {
            continue;
        }
        checked += 1;
        let gen = balanced_cycle_generator(&g, cycle).unwrap();
        let edges_at = |v: usize| -> Vec<usize> {
            (0..g.edge_count())
                .filter(|&e| g.edges()[e].tail == v || g.edges()[e].head == v)
                .collect()
        };
        let found = sources.iter().enumerate().any(|(i, &vi)| {
            sources.iter().skip(i + 1).any(|&vj| {
                let ei = edges_at(vi);
                let ej = edges_at(vj);
                ei.iter().all(|&a| {
                    ej.iter()
                        .all(|&b| gen.entries()[a].gcd(&gen.entries()[b]).is_one())
                })
            })
        });
        assert!(found, "no coprime source pair found");
    }
}

#[test]
fn graver_is_reduced_groebner_basis_for_shared_path_graphs() {
    let mut rng = SplitMix(0xA008);
    for trial in 0..30usize {
        let n = 2 + trial % 2;
        let mut flags = vec![true; n];
        if trial % 3 == 0 {
            flags[0] = false;
        }
        let g = shared_path_family(&mut rng, 1, &flags, 5);
        let matrix = g.incidence_matrix();
        let graver = graver_basis(&matrix, &limits()).unwrap();
        // the shared path has length one here, so its edge is the top
        // variable; the rest of the priority list is irrelevant
        let order = TermOrder::graded_for(&matrix, &[0]);
        assert!(is_reduced_gb(&graver, &order, &matrix, &limits()).unwrap());
    }
}

#[test]
fn d1_presence_forces_all_predicates_false() {
    let mut rng = SplitMix(0xA009);
    for trial in 0..200usize {
        // two balanced cycles sharing an edge is exactly the first
        // forbidden pattern
        let g = shared_path_family(&mut rng, 1, &[true, true], 7);
        assert!(!g.detect_d1(&limits()).unwrap().is_empty());
        let s = structural_classification(&g, &limits()).unwrap();
        assert!(s.strongly_robust.is_false());
        assert!(s.robust.is_false());
        assert!(s.generalized_robust.is_false());
        assert!(s.weakly_robust.is_false());
        if trial % 20 == 0 {
            let c = computational_report(&g, &limits()).unwrap();
            assert!(c.strongly_robust.is_false());
            assert!(c.robust.is_false());
            assert!(c.generalized_robust.is_false());
            assert!(c.weakly_robust.is_false());
        }
    }
}

#[test]
fn completion_equals_bounded_oracle_on_random_thetas() {
    let mut rng = SplitMix(0xA00A);
    let mut done = 0;
    while done < 50 {
        let g = random_theta(&mut rng, 6);
        if g.edge_count() > 12 {
            continue;
        }
        done += 1;
        let matrix = g.incidence_matrix();
        let graver = graver_basis(&matrix, &limits()).unwrap();
        if graver.is_empty() {
            continue;
        }
        let bound = covering_bound(&g);
        let oracle = graver_oracle(&matrix, bound, &limits()).unwrap();
        assert!(graver.same_elements(&oracle));
    }
}

#[test]
fn markov_fiber_criterion_equals_subset_enumeration() {
    let mut rng = SplitMix(0xA00B);
    let mut done = 0;
    while done < 20 {
        let g = random_theta(&mut rng, 4);
        let matrix = g.incidence_matrix();
        let graver = graver_basis(&matrix, &limits()).unwrap();
        if graver.is_empty() || graver.len() > 6 {
            continue;
        }
        done += 1;
        let (markov_oracle, ind_oracle) = markov_by_subset_enumeration(&matrix, &limits()).unwrap();
        let markov = universal_markov(&matrix, &limits()).unwrap();
        let ind = wog_toric_core::markov::indispensables(&matrix, &limits()).unwrap();
        assert!(markov.same_elements(&markov_oracle));
        assert!(ind.same_elements(&ind_oracle));
    }
}

#[test]
fn theta_generator_of_unbalanced_pair_is_primitive() {
    let mut rng = SplitMix(0xA00C);
    let mut done = 0;
    while done < 40 {
        let g = random_theta(&mut rng, 5);
        let Some(d) = g.shared_path_decomposition().unwrap() else {
            continue;
        };
        if d.cycles.len() != 2 || d.balanced.iter().any(|&b| b) {
            continue;
        }
        let Ok(outer) = g.outer_cycle(&d.cycles[0], &d.cycles[1], &d.path) else {
            continue;
        };
        if g.is_balanced(&outer) {
            continue;
        }
        done += 1;
        let gen = theta_unbalanced_generator(&g, &d.cycles[0], &d.cycles[1], &d.path).unwrap();
        let matrix = g.incidence_matrix();
        assert!(is_primitive(&matrix, &gen, &limits()).unwrap());
    }
}

#[test]
fn closed_form_matches_completion_on_random_two_balanced_instances() {
    let mut rng = SplitMix(0xA00D);
    for trial in 0..50usize {
        let g = shared_path_family(&mut rng, 1 + trial % 3, &[true, true], 6);
        let d = g.shared_path_decomposition().unwrap().unwrap();
        let report =
            wog_toric_core::shared_path::shared_path_two_balanced_graver(&g, &d, &limits())
                .unwrap();
        let graver = graver_basis(&g.incidence_matrix(), &limits()).unwrap();
        assert!(
            report.basis.same_elements(&graver),
            "closed form disagrees with completion on trial {trial}"
        );
    }
}

#[test]
fn strongly_robust_when_path_and_arcs_are_long() {
    // path length >= 2 and every arc >= 2: the degree-two criterion applies
    let mut rng = SplitMix(0xA00E);
    for trial in 0..50usize {
        let n = 2 + trial % 2;
        let mut flags = vec![true; n];
        if trial % 2 == 0 {
            flags[0] = false;
        }
        if n == 3 && trial % 3 == 0 {
            flags[1] = false;
        }
        let g = shared_path_family(&mut rng, 2 + (trial % 2), &flags, 5);
        let d = g.shared_path_decomposition().unwrap().unwrap();
        if d.path_len() < 2 || d.min_arc_len() < 2 {
            continue;
        }
        let s = structural_classification(&g, &limits()).unwrap();
        assert!(s.strongly_robust.is_true());
        // cross-check computationally on a sample
        if trial % 10 == 0 {
            let c = computational_report(&g, &limits()).unwrap();
            assert!(c.strongly_robust.is_true());
        }
    }
}

#[test]
fn structural_and_computational_verdicts_agree() {
    let mut rng = SplitMix(0xA00F);
    for trial in 0..30usize {
        let n = 2 + trial % 2;
        let mut flags = vec![true; n];
        flags[trial % n] = trial % 3 != 0;
        let g = shared_path_family(&mut rng, 1 + trial % 2, &flags, 5);
        let Ok(s) = structural_classification(&g, &limits()) else {
            continue;
        };
        let c = computational_report(&g, &limits()).unwrap();
        assert_eq!(s.strongly_robust, c.strongly_robust, "trial {trial}");
        assert_eq!(s.weakly_robust, c.weakly_robust, "trial {trial}");
        assert_eq!(s.robust, c.robust, "trial {trial}");
        assert_eq!(s.generalized_robust, c.generalized_robust, "trial {trial}");
    }
}

#[test]
fn two_unbalanced_plus_balanced_sharing_path_without_patterns_is_strongly_robust() {
    let mut rng = SplitMix(0xA010);
    let mut done = 0;
    while done < 25 {
        let n = 2 + rng.below(2) as usize;
        let mut flags = vec![true; n];
        flags[0] = false;
        if n >= 2 {
            flags[1] = false;
        }
        let k = rng.range(1, 2) as usize;
        let g = shared_path_family(&mut rng, k, &flags, 5);
        if !g.detect_d1(&limits()).unwrap().is_empty()
            || !g.detect_d2(&limits()).unwrap().is_empty()
        {
            continue;
        }
        done += 1;
        let c = computational_report(&g, &limits()).unwrap();
        assert!(c.strongly_robust.is_true());
    }
}

#[test]
fn completion_equals_oracle_in_kernel_dimension_three() {
    let mut rng = SplitMix(0xA011);
    let mut done = 0;
    while done < 15 {
        // three balanced cycles sharing a path: kernel dimension three
        let k = rng.range(1, 2) as usize;
        let g = shared_path_family(&mut rng, k, &[true, true, true], 4);
        let matrix = g.incidence_matrix();
        if matrix.kernel_dimension() != 3 {
            continue;
        }
        done += 1;
        let graver = graver_basis(&matrix, &limits()).unwrap();
        let bound = covering_bound(&g);
        if bound > 40 {
            continue; // keep the grid scan small
        }
        let oracle = graver_oracle(&matrix, bound, &limits()).unwrap();
        assert!(graver.same_elements(&oracle));
    }
}

#[test]
fn fiber_matches_box_scan_on_small_instances() {
    // independent oracle: scan the full exponent box bounded by the degree
    // (weights are at least one, so no fiber entry can exceed the largest
    // degree coordinate)
    let mut rng = SplitMix(0xA012);
    let mut done = 0;
    while done < 5 {
        let g = random_theta(&mut rng, 3);
        let matrix = g.incidence_matrix();
        if matrix.cols() > 6 {
            continue;
        }
        let graver = graver_basis(&matrix, &limits()).unwrap();
        let Some(element) = graver.elements().first() else {
            continue;
        };
        let witness = element.positive_part();
        let degree = matrix.mul_vector(&witness).unwrap();
        let bound = degree.iter().max().cloned().unwrap_or_default();
        if bound > num_bigint::BigInt::from(8) {
            continue;
        }
        done += 1;
        let f = wog_toric_core::fiber::fiber(&matrix, &witness, &limits()).unwrap();
        let m = matrix.cols();
        let mut scan = Vec::new();
        let mut u = vec![num_bigint::BigInt::from(0); m];
        'grid: loop {
            if matrix.mul_vector(&u).unwrap() == degree {
                scan.push(u.clone());
            }
            let mut i = 0;
            loop {
                if i == m {
                    break 'grid;
                }
                if u[i] < bound {
                    u[i] += 1;
                    break;
                }
                u[i] = num_bigint::BigInt::from(0);
                i += 1;
            }
        }
        scan.sort();
        assert_eq!(f.points, scan);
    }
}
