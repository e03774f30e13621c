//! Renders the drawing gallery as SVG files: ring-shaped minimizers and
//! Voronoi-shaped maximizers.
//!
//! By default runs miniature versions (13x13 grid) in a couple of seconds:
//!
//! ```bash
//! cargo run --release --example figure_gallery
//! ```
//!
//! Pass `--full` for the full-scale 51x51 and 101x101 reproductions (a few
//! minutes of annealing plus refinement):
//!
//! ```bash
//! cargo run --release --example figure_gallery -- --full [out_dir]
//! ```

use std::path::PathBuf;

use gridlam::figures::{figure_specs, run_figure, FigureSpec};
use gridlam::graphs::PartitionSpec;
use gridlam::grid::GridSpec;
use gridlam::lambda::lambda_string;
use gridlam::maximize::Direction;
use gridlam::minimize::ring_construction;
use gridlam::svg::render_coloring_svg_bytes;

fn mini_specs() -> Vec<FigureSpec> {
    // 13x13 = 169 points; thirds and quarters of the full-scale splits
    let grid = GridSpec::new(2, 6).unwrap();
    vec![
        FigureSpec {
            name: "mini-min-2-colors",
            grid,
            class_sizes: vec![56, 113],
            direction: Direction::Minimize,
        },
        FigureSpec {
            name: "mini-max-2-colors",
            grid,
            class_sizes: vec![42, 127],
            direction: Direction::Maximize,
        },
        FigureSpec {
            name: "mini-max-3-colors",
            grid,
            class_sizes: vec![33, 47, 89],
            direction: Direction::Maximize,
        },
    ]
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let full = args.iter().any(|a| a == "--full");
    let out_dir: PathBuf = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("figures"));
    std::fs::create_dir_all(&out_dir).expect("create output directory");

    let specs = if full { figure_specs() } else { mini_specs() };
    println!(
        "rendering {} drawings into {}/",
        specs.len(),
        out_dir.display()
    );

    for fig in &specs {
        // minimizers have a deterministic closed-form reproduction: render
        // the ring construction alongside the annealed drawing
        if matches!(fig.direction, Direction::Minimize) {
            let spec = PartitionSpec::new(fig.class_sizes.clone()).unwrap();
            let ring = ring_construction(&spec, &fig.grid).unwrap();
            let bytes = render_coloring_svg_bytes(&ring.coloring).unwrap();
            let path = out_dir.join(format!("{}-ring.svg", fig.name));
            std::fs::write(&path, bytes).unwrap();
            println!(
                "  {} (ring construction): lambda = {} -> {}",
                fig.name,
                lambda_string(&ring.lambda),
                path.display()
            );
        }
        let report = run_figure(fig, 20, Some(&out_dir)).unwrap();
        let quality = match report.violations {
            Some(v) => format!("{v} Voronoi violations (budget {})", report.violation_budget),
            None => format!("ring reference {}", report.ring_lambda.as_deref().unwrap_or("-")),
        };
        println!(
            "  {} (annealed): lambda = {}, {} [{} ms]",
            report.name, report.lambda, quality, report.wall_ms
        );
    }
}
