//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::{Command, ExitCode};

use num_bigint::BigUint;
use treegen::counting::{count_equal_radius, count_linear_total, g, stars_and_bars};
use treegen::oracle::{
    oracle_by_diameter, oracle_free_trees, oracle_prufer, oracle_rooted_trees, rooted_counts,
};
use treegen::treeenum::equal_radius_set;
use treegen::{
    cmp_partition, list_halftrees, partitions, step_of, Audit, CanonicalForm, Catalog, HalfTree,
    Tree, TreeLister,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const FREE: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
const ROOTED: [u32; 10] = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719];
const MAX_N: usize = 12;

struct Run {
    emitted: BTreeMap<usize, Vec<(usize, Tree)>>,
    audit: Audit,
}

fn generate() -> Run {
    let mut audit = Audit::default();
    let mut emitted = BTreeMap::new();
    for n in 1..=MAX_N {
        let lister = TreeLister::new(n).expect("valid order");
        let list = lister.list_audited(&mut audit);
        emitted.insert(n, list.into_iter().map(|e| (e.step, e.tree)).collect());
    }
    Run { emitted, audit }
}

fn oracle_equivalence(run: &Run) -> Check {
    for n in 1..=MAX_N {
        let got: BTreeSet<CanonicalForm> =
            run.emitted[&n].iter().map(|(_, t)| t.canonical()).collect();
        let oracle = oracle_free_trees(n).map_err(|e| e.to_string())?;
        let want: BTreeSet<CanonicalForm> = oracle.iter().map(|t| t.canonical()).collect();
        ensure(want.len() == oracle.len(), || {
            format!("oracle repeats at n={n}")
        })?;
        ensure(got == want, || format!("canonical sets differ at n={n}"))?;
        ensure(run.emitted[&n].len() == oracle.len(), || {
            format!(
                "n={n}: {} emitted, {} expected",
                run.emitted[&n].len(),
                oracle.len()
            )
        })?;
        if n <= FREE.len() {
            ensure(oracle.len() == FREE[n - 1], || {
                format!("n={n}: oracle gives {}", oracle.len())
            })?;
        }
        if n <= 8 {
            let prufer: BTreeSet<_> = oracle_prufer(n)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            ensure(prufer == want, || {
                format!("labeled sweep disagrees at n={n}")
            })?;
        }
    }
    Ok(format!("n=1..={MAX_N}"))
}

fn no_duplicates(run: &Run) -> Check {
    let mut total = 0;
    for (n, list) in &run.emitted {
        let mut seen = HashSet::new();
        for (_, t) in list {
            ensure(seen.insert(t.canonical()), || format!("repeat at n={n}"))?;
        }
        total += list.len();
    }
    Ok(format!("{total} emissions, 0 collisions"))
}

fn stratification(run: &Run) -> Check {
    for (&n, list) in &run.emitted {
        for (k, t) in list {
            ensure(t.order() == n, || format!("order {} at n={n}", t.order()))?;
            ensure(n > *k && t.diameter() == n - k - 1, || {
                format!("n={n} step {k}: diameter {}", t.diameter())
            })?;
            ensure(step_of(t, n) == *k, || format!("step_of mismatch at n={n}"))?;
        }
    }
    Ok("all emissions".into())
}

fn halftree_completeness() -> Check {
    let recurrence = rooted_counts(MAX_N);
    for n in 1..=MAX_N {
        let listed = list_halftrees(n).map_err(|e| e.to_string())?;
        let oracle = oracle_rooted_trees(n).map_err(|e| e.to_string())?;
        let a: BTreeSet<_> = listed.iter().map(HalfTree::canonical).collect();
        let b: BTreeSet<_> = oracle.iter().map(HalfTree::canonical).collect();
        ensure(a.len() == listed.len(), || {
            format!("repeated half-tree at n={n}")
        })?;
        ensure(a == b, || format!("half-tree sets differ at n={n}"))?;
        ensure(BigUint::from(listed.len()) == recurrence[n - 1], || {
            format!(
                "n={n}: {} listed, recurrence {}",
                listed.len(),
                recurrence[n - 1]
            )
        })?;
        if n <= ROOTED.len() {
            ensure(listed.len() == ROOTED[n - 1] as usize, || {
                format!("n={n}: {}", listed.len())
            })?;
        }
    }
    Ok(format!("n=1..={MAX_N}"))
}

fn formula_agreement() -> Check {
    let catalog = Catalog::up_to(3).map_err(|e| e.to_string())?;
    let mut cases = 0;
    for k in 0..=4 {
        for r in 1..=3 {
            for n in 3..=10 {
                let set = equal_radius_set(&catalog, k, r, n).map_err(|e| e.to_string())?;
                let formula = count_equal_radius(k, r, n);
                ensure(BigUint::from(set.len()) == formula, || {
                    format!(
                        "k={k} r={r} n={n}: formula {formula}, generated {}",
                        set.len()
                    )
                })?;
                let distinct: BTreeSet<_> =
                    set.trees(&catalog).iter().map(Tree::canonical).collect();
                ensure(distinct.len() == set.len(), || {
                    format!("k={k} r={r} n={n}: repeats")
                })?;
                cases += 1;
            }
        }
    }
    let linear = count_linear_total(2, 6);
    let table = oracle_by_diameter(8).map_err(|e| e.to_string())?;
    ensure(linear == BigUint::from(table.get(8, 5)), || {
        format!("linear total {linear}, oracle {}", table.get(8, 5))
    })?;
    Ok(format!("{cases} equal-radius cases, linear total {linear}"))
}

fn symmetry_arithmetic(run: &Run) -> Check {
    ensure(run.audit.is_clean(), || run.audit.failures.join("; "))?;
    ensure(
        run.audit.sets_checked > 0 && run.audit.combines_checked > 0,
        || "nothing audited".into(),
    )?;
    Ok(format!(
        "{} sets, {} combines",
        run.audit.sets_checked, run.audit.combines_checked
    ))
}

/// Nondecreasing slot sequences of length `k` over `n` slots.
fn placements_by_hand(k: usize, n: usize) -> usize {
    fn go(left: usize, from: usize, n: usize) -> usize {
        if left == 0 {
            return 1;
        }
        (from..n).map(|s| go(left - 1, s, n)).sum()
    }
    go(k, 0, n)
}

fn placement_identity() -> Check {
    for k in 0..=20 {
        for n in 0..=20 {
            ensure(g(k, n) == stars_and_bars(k, n), || format!("k={k} n={n}"))?;
            if k <= 6 && n <= 6 {
                ensure(g(k, n) == BigUint::from(placements_by_hand(k, n)), || {
                    format!("direct count k={k} n={n}")
                })?;
            }
        }
    }
    Ok("0 <= k, n <= 20".into())
}

/// Sorts `items` by `cmp`, then demands that every pair compares by sorted
/// position, with ties exactly where `same` holds.
fn total_order<T>(
    mut items: Vec<T>,
    cmp: impl Fn(&T, &T) -> Ordering,
    same: impl Fn(&T, &T) -> bool,
) -> Result<usize, String> {
    items.sort_by(&cmp);
    for i in 0..items.len() {
        for j in i..items.len() {
            let (a, b) = (&items[i], &items[j]);
            let (ab, ba) = (cmp(a, b), cmp(b, a));
            ensure(ab == ba.reverse(), || {
                format!("antisymmetry fails at {i},{j}")
            })?;
            let want = if same(a, b) {
                Ordering::Equal
            } else {
                Ordering::Less
            };
            ensure(ab == want, || format!("order fails at {i},{j}: {ab:?}"))?;
        }
    }
    Ok(items.len())
}

fn ordering_laws() -> Check {
    let mut checked = 0;
    for n in 0..=12 {
        checked += total_order(
            partitions(n),
            |p, q| cmp_partition(p, q).expect("same total"),
            |p, q| p.parts_desc() == q.parts_desc(),
        )?;
    }

    let catalog = Catalog::up_to(8).map_err(|e| e.to_string())?;
    let mut trees = Vec::new();
    for order in 1..=8 {
        for h in catalog.halftrees(order) {
            trees.push(h.clone());
            // A relabeled copy must tie with its original.
            let n = h.order();
            let perm: Vec<usize> = (0..n).map(|v| if v == 0 { 0 } else { n - v }).collect();
            trees.push(h.relabel(&perm).map_err(|e| e.to_string())?);
        }
    }
    checked += total_order(
        trees,
        |a, b| catalog.cmp_halftree(a, b).expect("catalogued"),
        |a, b| ahu(&rooted_adjacency(a), a.root()) == ahu(&rooted_adjacency(b), b.root()),
    )?;

    for order in 1..=5 {
        for count in 1..=3 {
            let all = catalog
                .fixed_order_multisets(order, count)
                .map_err(|e| e.to_string())?;
            let expected = treegen::multichoose(catalog.len(order), count);
            ensure(BigUint::from(all.len()) == expected, || {
                format!("{} multisets of order {order}, size {count}", all.len())
            })?;
            checked += total_order(
                all.to_vec(),
                |a, b| catalog.cmp_fixed_order(a, b).expect("same shape"),
                |a, b| a.members() == b.members(),
            )?;
        }
    }

    for n in 0..=6 {
        for p in partitions(n) {
            let sets = catalog.appendix_sets(&p).map_err(|e| e.to_string())?;
            checked += total_order(
                sets,
                |a, b| catalog.cmp_appendix_set(a, b).expect("same partition"),
                |a, b| a == b,
            )?;
        }
    }
    Ok(format!("{checked} elements"))
}

fn rooted_adjacency(h: &HalfTree) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); h.order()];
    for (u, v) in h.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Parenthesis code of the tree rooted at `root`, children sorted.
fn ahu(adj: &[Vec<usize>], root: usize) -> String {
    fn go(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| go(adj, w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    go(adj, root, usize::MAX)
}

/// Isomorphism key of a free tree: codes from its center(s) found by leaf
/// peeling.
fn free_code(adj: &[Vec<usize>]) -> String {
    let n = adj.len();
    if n == 1 {
        return ahu(adj, 0);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu(adj, c)).min().expect("a center")
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// graph6 reader: order header, then the upper triangle column by column.
fn read_graph6(line: &str) -> Result<(usize, Vec<(usize, usize)>), String> {
    let data: Vec<u32> = line.bytes().map(|b| b as u32).collect();
    if data.is_empty() || data.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(format!("bad graph6 {line:?}"));
    }
    let (n, start) = if data[0] < 126 {
        ((data[0] - 63) as usize, 1)
    } else {
        if data.len() < 4 {
            return Err("short header".into());
        }
        let n = ((data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)) as usize;
        (n, 4)
    };
    let bits: Vec<bool> = data[start..]
        .iter()
        .flat_map(|&b| (0..6).rev().map(move |i| (b - 63) >> i & 1 == 1))
        .collect();
    let needed = n * n.saturating_sub(1) / 2;
    if bits.len() < needed || bits.len() >= needed + 6 {
        return Err(format!("wrong length for order {n}"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok((n, edges))
}

fn read_edge_list(line: &str) -> Result<(usize, Vec<(usize, usize)>), String> {
    let (n, rest) = line.split_once(';').ok_or("no ';'")?;
    let n: usize = n.parse().map_err(|_| "bad order")?;
    let mut edges = Vec::new();
    for pair in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (u, v) = pair.split_once('-').ok_or("bad edge")?;
        edges.push((
            u.parse().map_err(|_| "bad vertex")?,
            v.parse().map_err(|_| "bad vertex")?,
        ));
    }
    Ok((n, edges))
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_treegen"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "treegen {args:?} exited with {:?}",
            out.status.code()
        ));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn cli_round_trip() -> Check {
    let mut records = 0;
    for n in 1..=10 {
        let ns = n.to_string();
        let g6 = cli(&["list", &ns, "--format", "graph6"])?;
        ensure(g6 == cli(&["list", &ns, "--format", "graph6"])?, || {
            format!("graph6 output differs between runs at n={n}")
        })?;
        let el = cli(&["list", &ns])?;
        ensure(el == cli(&["list", &ns])?, || {
            format!("edge lists differ between runs at n={n}")
        })?;
        let el: Vec<&str> = el.lines().filter(|l| !l.starts_with('#')).collect();
        let g6: Vec<&str> = g6.lines().collect();
        ensure(el.len() == g6.len() && g6.len() == FREE[n - 1], || {
            format!(
                "n={n}: {} edge lists, {} graph6 records",
                el.len(),
                g6.len()
            )
        })?;
        let mut codes = HashSet::new();
        for (a, b) in el.iter().zip(&g6) {
            let (na, ea) = read_edge_list(a)?;
            let (nb, eb) = read_graph6(b)?;
            ensure(na == n && nb == n && eb.len() + 1 == n, || {
                format!("bad record {b:?}")
            })?;
            let code = free_code(&adjacency(nb, &eb));
            ensure(code == free_code(&adjacency(na, &ea)), || {
                format!("{b:?} does not decode to {a:?}")
            })?;
            codes.insert(code);
            records += 1;
        }
        ensure(codes.len() == g6.len(), || {
            format!("repeated graph6 trees at n={n}")
        })?;
    }
    Ok(format!("{records} records"))
}

fn main() -> ExitCode {
    let run = generate();
    let criteria: Vec<(&str, Check)> = vec![
        ("1 oracle equivalence", oracle_equivalence(&run)),
        ("2 no duplicate emission", no_duplicates(&run)),
        ("3 diameter stratification", stratification(&run)),
        ("4 half-tree completeness", halftree_completeness()),
        ("5 formula/generator agreement", formula_agreement()),
        ("6 symmetry arithmetic", symmetry_arithmetic(&run)),
        ("7 placement identity", placement_identity()),
        ("8 ordering laws", ordering_laws()),
        ("9 cli graph6 round trip", cli_round_trip()),
    ];
    let mut failed = 0;
    for (name, result) in &criteria {
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
