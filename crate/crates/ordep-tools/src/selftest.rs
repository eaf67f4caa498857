//! Machine checks for the three structural theorems, packaged for the CLI:
//! exhaustive sweeps over every small tree plus seeded random populations.

use ordep::{
    build, derive, enumerate_trees, execute_arcs, execute_tree, exists_contiguous_representation,
    gen_random_derivation, gen_random_tree, recover, DependencyTree, Sentence, MAX_ENUM,
    MAX_EXISTS,
};

const RANDOM_SWEEP: u64 = 2000;

fn blank_sentence(n: usize) -> Sentence {
    Sentence::from_forms((1..=n).map(|i| format!("w{i}")))
}

fn every_tree(n: usize) -> Vec<DependencyTree> {
    enumerate_trees(n).expect("bounded by MAX_ENUM")
}

/// Theorem 1: a contiguous ordered representation exists exactly for the
/// projective trees, and projectivity coincides with crossing-freeness.
pub fn theorem1() -> Result<String, String> {
    let mut searched = 0usize;
    for n in 1..=MAX_EXISTS {
        for t in every_tree(n) {
            let projective = t.is_projective().map_err(|e| e.to_string())?;
            let exists = exists_contiguous_representation(&t).map_err(|e| e.to_string())?;
            if exists != projective {
                return Err(format!(
                    "n={n} arcs={:?}: representation exists = {exists}, projective = {projective}",
                    t.arcs()
                ));
            }
            searched += 1;
        }
    }
    let mut compared = 0usize;
    let mut check_crossings = |t: &DependencyTree, what: &str| -> Result<(), String> {
        let projective = t.is_projective().map_err(|e| e.to_string())?;
        let crossings = t.crossing_pairs().map_err(|e| e.to_string())?;
        if projective != crossings.is_empty() {
            return Err(format!(
                "{what} arcs={:?}: projective = {projective} but crossings = {crossings:?}",
                t.arcs()
            ));
        }
        compared += 1;
        Ok(())
    };
    for n in 1..=MAX_ENUM {
        for t in every_tree(n) {
            check_crossings(&t, &format!("n={n}"))?;
        }
    }
    for seed in 0..RANDOM_SWEEP {
        let n = 1 + (seed as usize) % 12;
        let t = gen_random_tree(n, seed, false);
        check_crossings(&t, &format!("seed={seed}"))?;
    }
    Ok(format!(
        "representation search on {searched} trees (n \u{2264} {MAX_EXISTS}), \
         crossing equivalence on {compared} trees (exhaustive n \u{2264} {MAX_ENUM} \
         + {RANDOM_SWEEP} random, n \u{2264} 12)"
    ))
}

/// Theorem 2: executing the canonical derivation as tree construction lands
/// on the directly built representation.
pub fn theorem2() -> Result<String, String> {
    let mut checked = 0usize;
    let mut check = |t: &DependencyTree, what: &str| -> Result<(), String> {
        let d = derive(t).map_err(|e| format!("{what}: derive failed: {e}"))?;
        let executed =
            execute_tree(t.sentence(), &d).map_err(|e| format!("{what}: execution failed: {e}"))?;
        let built = build(t).map_err(|e| format!("{what}: build failed: {e}"))?;
        if executed != built {
            return Err(format!("{what}: executed tree differs from built tree"));
        }
        checked += 1;
        Ok(())
    };
    for n in 1..=MAX_EXISTS {
        for t in every_tree(n) {
            if t.is_projective().map_err(|e| e.to_string())? {
                check(&t, &format!("n={n} arcs={:?}", t.arcs()))?;
            }
        }
    }
    for seed in 0..RANDOM_SWEEP {
        let n = 1 + (seed as usize) % 12;
        let s = blank_sentence(n);
        let d = gen_random_derivation(n, seed);
        let t = execute_arcs(&s, &d).map_err(|e| format!("seed={seed}: {e}"))?;
        check(&t, &format!("seed={seed}"))?;
    }
    Ok(format!(
        "execute(derive) = build on {checked} projective trees \
         (exhaustive n \u{2264} {MAX_EXISTS} + {RANDOM_SWEEP} random, n \u{2264} 12)"
    ))
}

/// Theorem 3: recovery inverts construction, whichever way the tree was made.
pub fn theorem3() -> Result<String, String> {
    let mut checked = 0usize;
    let mut check = |t: &DependencyTree, what: &str| -> Result<(), String> {
        let built = build(t).map_err(|e| format!("{what}: build failed: {e}"))?;
        if recover(&built, t.sentence()).map_err(|e| format!("{what}: {e}"))? != *t {
            return Err(format!("{what}: recover(build) differs from the input"));
        }
        let d = derive(t).map_err(|e| format!("{what}: derive failed: {e}"))?;
        let executed =
            execute_tree(t.sentence(), &d).map_err(|e| format!("{what}: execution failed: {e}"))?;
        if recover(&executed, t.sentence()).map_err(|e| format!("{what}: {e}"))? != *t {
            return Err(format!(
                "{what}: recover(execute(derive)) differs from the input"
            ));
        }
        checked += 1;
        Ok(())
    };
    for n in 1..=MAX_EXISTS {
        for t in every_tree(n) {
            if t.is_projective().map_err(|e| e.to_string())? {
                check(&t, &format!("n={n} arcs={:?}", t.arcs()))?;
            }
        }
    }
    for seed in 0..RANDOM_SWEEP {
        let n = 1 + (seed as usize) % 12;
        let s = blank_sentence(n);
        let d = gen_random_derivation(n, seed);
        let t = execute_arcs(&s, &d).map_err(|e| format!("seed={seed}: {e}"))?;
        check(&t, &format!("seed={seed}"))?;
    }
    Ok(format!(
        "recovery exact on {checked} projective trees \
         (exhaustive n \u{2264} {MAX_EXISTS} + {RANDOM_SWEEP} random, n \u{2264} 12)"
    ))
}
