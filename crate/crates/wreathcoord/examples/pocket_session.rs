//! Walkthrough: coordinatize the Pocket Cube two ways, scramble it, and
//! solve it level by level.

use wreathcoord::puzzle::{cornerwise_chain, two_level_chain, PuzzleDefinition};
use wreathcoord::Decomposition;

fn main() {
    let cube = PuzzleDefinition::pocket_cube();
    println!("pocket cube group order: {}", cube.group().order());

    let two_level = Decomposition::build(two_level_chain(&cube).unwrap()).unwrap();
    println!("\ntwo-level coordinate system (permute corners, then count twists):");
    for (i, level) in two_level.levels().iter().enumerate() {
        println!(
            "  level {}: {} coordinate values, component order {}",
            i + 1,
            level.index_count(),
            level.action().order()
        );
    }

    let scrambled = cube.group().random_element(2024);
    println!("\nscrambled: {scrambled}");
    let coords = two_level.encode(&scrambled).unwrap();
    println!("coordinates: {coords}");

    println!("\nkilling by levels:");
    let mut state = scrambled.clone();
    for (i, killer) in two_level.level_killers(&coords).unwrap().iter().enumerate() {
        state = state.compose(killer);
        println!(
            "  after killing level {}: {} -> coordinates {}",
            i + 1,
            state,
            two_level.encode(&state).unwrap()
        );
    }
    assert!(state.is_identity());

    let word = two_level.solve_word(&scrambled).unwrap();
    println!("\nsolving word ({} moves): {}", word.len(), word);
    let solved = scrambled.compose(&cube.group().evaluate_word(&word).unwrap());
    assert!(solved.is_identity());
    println!("scrambled * word = {solved}");

    let cornerwise = Decomposition::build(cornerwise_chain(&cube).unwrap()).unwrap();
    println!(
        "\ncornerwise coordinates of the same scramble: {}",
        cornerwise.encode(&scrambled).unwrap()
    );
}
