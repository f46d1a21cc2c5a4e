//! Throwaway micro-benchmark for canonical-code speed on grid-like graphs.

use graph_core::{generate, GeneratorSpec};
use neighborhood_stats::canon::Canonizer;
use neighborhood_stats::extract_ball;
use std::time::Instant;

fn main() {
    let g = generate(&GeneratorSpec::Grid { w: 40, h: 40 }, 0).unwrap();
    let mut canon = Canonizer::new();

    // Radius-8 ball around an interior vertex: diamond with 145 vertices.
    let center = 20 * 40 + 20;
    let ball = extract_ball(&g, center, 8);
    println!("ball n = {}, m = {}", ball.n(), ball.edge_count());
    let start = Instant::now();
    let iters = 2000;
    let mut sink = 0usize;
    for _ in 0..iters {
        sink += ball.canonical_code(&mut canon).len();
    }
    let dt = start.elapsed();
    println!(
        "interior diamond: {:.1} us/code (sink {})",
        dt.as_secs_f64() * 1e6 / iters as f64,
        sink
    );

    // Bigger: radius-12 ball (313 vertices) — close to the largest local
    // graphs in the partition pipeline.
    let ball = extract_ball(&g, center, 12);
    println!("ball n = {}, m = {}", ball.n(), ball.edge_count());
    let start = Instant::now();
    let iters = 1000;
    let mut sink = 0usize;
    for _ in 0..iters {
        sink += ball.canonical_code(&mut canon).len();
    }
    let dt = start.elapsed();
    println!(
        "radius-12 diamond: {:.1} us/code (sink {})",
        dt.as_secs_f64() * 1e6 / iters as f64,
        sink
    );

    // Corner ball: less symmetric.
    let ball = extract_ball(&g, 0, 12);
    println!("corner ball n = {}, m = {}", ball.n(), ball.edge_count());
    let start = Instant::now();
    let mut sink = 0usize;
    for _ in 0..iters {
        sink += ball.canonical_code(&mut canon).len();
    }
    let dt = start.elapsed();
    println!(
        "corner ball: {:.1} us/code (sink {})",
        dt.as_secs_f64() * 1e6 / iters as f64,
        sink
    );

    // Tree ball: automorphism-heavy worst case.
    let t = generate(&GeneratorSpec::Tree { n: 3000, d: 4 }, 3).unwrap();
    let ball = extract_ball(&t, 1500, 3);
    println!("tree ball n = {}", ball.n());
    let start = Instant::now();
    let iters = 200;
    let mut sink = 0usize;
    for _ in 0..iters {
        sink += ball.canonical_code(&mut canon).len();
    }
    let dt = start.elapsed();
    println!(
        "tree ball: {:.1} us/code (sink {})",
        dt.as_secs_f64() * 1e6 / iters as f64,
        sink
    );
}
