from jointdyad.generator.benchmark import (
    BenchmarkConfig,
    PlantedInstance,
    draw_samples,
    expected_edges,
    generate_benchmark,
    sample_graph,
    solve_zeta,
    synthesize_params,
)

__all__ = [
    "BenchmarkConfig",
    "PlantedInstance",
    "draw_samples",
    "expected_edges",
    "generate_benchmark",
    "sample_graph",
    "solve_zeta",
    "synthesize_params",
]
