mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_spanning_trees, random_graph, small_graphs};
use squaring::exact::Matrix;
use squaring::fixtures::nine_square_cnet;
use squaring::network::place_solution;
use squaring::{brute_generate, complexity, full_currents, voltage_matrix, Network, NetworkAnalysis, RowOutcome};

fn kirchhoff(net: &Network) -> Matrix<i128> {
    Matrix::from_i64(&net.kirchhoff())
}

#[test]
fn matrix_tree_matches_brute_force() {
    let graphs = small_graphs(8);
    // Connected simple graphs with 0..=8 edges.
    let per_size: Vec<usize> = (0..=8).map(|m| graphs.iter().filter(|(_, e)| e.len() == m).count()).collect();
    assert_eq!(per_size, vec![1, 1, 1, 3, 5, 12, 30, 79, 227]);
    for (n, edges) in graphs.iter().filter(|(n, _)| *n >= 2) {
        let net = Network::new(*n, edges.clone(), n - 1).unwrap();
        let det = complexity(&kirchhoff(&net)).unwrap();
        assert_eq!(det, brute_spanning_trees(*n, edges) as i128, "{edges:?}");
    }
}

#[test]
fn voltage_matrix_inverts_kirchhoff() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5157);
    for _ in 0..1000 {
        let (n, edges) = random_graph(&mut rng);
        let net = Network::new(n, edges, n - 1).unwrap();
        let k = kirchhoff(&net);
        let (det, v) = voltage_matrix(&k).unwrap();
        assert!(det > 0);
        assert!(v.is_symmetric());
        let kv = k.checked_mul(&v).unwrap();
        assert_eq!(kv, Matrix::identity(n - 1).scaled(&det).unwrap());
        assert!(full_currents(&net, &v).unwrap().is_symmetric());
    }
}

#[test]
fn results_do_not_depend_on_datum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (n, edges) = random_graph(&mut rng);
        let a = NetworkAnalysis::<i128>::compute(&Network::new(n, edges.clone(), n - 1).unwrap()).unwrap();
        let b = NetworkAnalysis::<i128>::compute(&Network::new(n, edges, rng.gen_range(0..n)).unwrap()).unwrap();
        assert_eq!(a.det, b.det);
        assert_eq!(a.f, b.f);
    }
}

/// KCL, the semiperimeter identity and the size multiset, on every solution
/// of every small 2-connected graph and its dual.
#[test]
fn every_solution_satisfies_kcl() {
    let mut graphs = brute_generate(8, 13).unwrap();
    graphs.extend(graphs.clone().iter().map(|g| g.dual()));
    graphs.push(nine_square_cnet());
    let mut checked = 0;
    for e in &graphs {
        let net = Network::from_embedding(e);
        let a = NetworkAnalysis::<i128>::compute(&net).unwrap();
        for sol in a.solutions().unwrap() {
            assert!(sol.satisfies_kcl(&net));
            assert_eq!(sol.width + sol.height, a.det / sol.reduction);
            if let RowOutcome::Rectangle { dissection, .. } = place_solution(e, &sol).unwrap() {
                let mut sizes: Vec<u64> = dissection.sizes().collect();
                let mut currents: Vec<u64> = sol
                    .currents
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != sol.polar_branch)
                    .map(|(_, c)| c.unsigned_abs() as u64)
                    .collect();
                sizes.sort_unstable();
                currents.sort_unstable();
                assert_eq!(sizes, currents);
                assert_eq!(dissection.width() as i128, sol.width);
            }
            checked += 1;
        }
    }
    assert!(checked > 1000, "{checked}");
}
