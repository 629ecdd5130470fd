//! Criterion benchmarks for the game engine; see `benches/game.rs`.
