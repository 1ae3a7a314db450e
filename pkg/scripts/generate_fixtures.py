#!/usr/bin/env python3
"""
Regenerate the JSON fixtures under data/.
Named constructions are exact; the random sample and distribution depend on --seed.
"""
import argparse
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config.settings import DATA_DIR
from src.core.classes import ConceptClass
from src.core.corpus import ClassCorpusGenerator
from src.core.loaders import class_to_model, dumps, write_output
from src.complex.generators import gen_boolean_cube, gen_cycle_complex, gen_hexagon, gen_torus_pseudocube
from src.complex.simplicial import complex_to_model

S3_PAIR = {
    "degree": 3,
    "generators": [[[0, 1]], [[0, 1, 2]]],
    "subgroups": [{"generators": [[[0, 1]]]}, {"generators": [[[0, 2]]]}],
}

Z2Z2_PAIR = {
    "degree": 4,
    "generators": [[[0, 1]], [[2, 3]]],
    "subgroups": [{"generators": [[[0, 1]]]}, {"generators": [[[2, 3]]]}],
}


def generate(output_dir: Path, seed: int) -> None:
    hexagon = gen_hexagon()
    torus = gen_torus_pseudocube()
    generator = ClassCorpusGenerator(seed=seed)
    sample = generator.random_realizable_sample(hexagon, 20)
    distribution = generator.random_distribution(hexagon, support=2)

    files = {
        "hexagon.json": class_to_model(hexagon),
        "boolean_cube_3.json": class_to_model(gen_boolean_cube(3)),
        "example32.json": class_to_model(ConceptClass(2, ((1, 1), (1, 0), (0, 1), (2, 0), (0, 2)))),
        "example33.json": class_to_model(ConceptClass(2, ((2, 2), (1, 1), (1, 0), (2, 0)))),
        "torus.json": class_to_model(torus.concept_class),
        "torus_complex.json": complex_to_model(torus.complex),
        "s3_pair.json": S3_PAIR,
        "z2z2_pair.json": Z2Z2_PAIR,
        "hexagon_sample.json": [[e.x, e.y] for e in sample],
        "hexagon_menu.json": {"p": 2, "entries": {"0": [1, 3], "1": [2, 4]}},
        "hexagon_distribution.json": {
            "atoms": [{"x": e.x, "y": e.y, "p": str(p)} for e, p in distribution.atoms]
        },
        "six_cycle_bipartite.json": {"left_right_edges": [[1, 2], [3, 2], [3, 4], [5, 4], [5, 6], [1, 6]]},
        "path_bipartite.json": {"left_right_edges": [[0, 0], [1, 0]]},
        "six_cycle_complex.json": complex_to_model(gen_cycle_complex(6)),
    }
    for name, payload in files.items():
        write_output(dumps(payload), output_dir / name)
        print(f"+ {name}")


def main():
    parser = argparse.ArgumentParser(description="Generate mclab JSON fixtures")
    parser.add_argument("--output", type=str, default=str(DATA_DIR), help="Output directory")
    parser.add_argument("--seed", type=int, default=42, help="Random seed for the sample and distribution")
    args = parser.parse_args()

    generate(Path(args.output), args.seed)
    print(f"\nFixtures written to {args.output} (seed {args.seed})")


if __name__ == "__main__":
    main()
