#!/usr/bin/env python3
"""
Test script to verify the package layout and that every module imports
"""

import os
import sys

REQUIRED_FILES = [
    "README.md",
    "DESIGN.md",
    "requirements.txt",
    "setup.py",
    "docker-compose.yml",
    "main.py",
    "conftest.py",
    "data/paper_matrix.txt",
    "src/__init__.py",
    "src/core/__init__.py",
    "src/core/field.py",
    "src/core/ring.py",
    "src/core/polynomial.py",
    "src/core/groebner.py",
    "src/core/hilbert.py",
    "src/core/ideal.py",
    "src/core/linalg.py",
    "src/core/matrix.py",
    "src/core/parser.py",
    "src/homology/__init__.py",
    "src/homology/resolution.py",
    "src/homology/cohomology.py",
    "src/homology/classifier.py",
    "src/lattice/__init__.py",
    "src/lattice/blowup.py",
    "src/lattice/chambers.py",
    "src/lattice/cubic_surface.py",
    "src/lattice/arithmetic.py",
    "src/utils/__init__.py",
    "src/utils/config.py",
    "src/utils/errors.py",
    "src/utils/cache.py",
    "src/utils/report.py",
    "src/apps/__init__.py",
    "src/apps/recipes.py",
    "src/apps/pipeline.py",
    "src/apps/verify.py",
    "src/apps/cli.py",
    "src/apps/golden.json",
]


def _root() -> str:
    return os.path.dirname(os.path.abspath(__file__))


def test_file_structure():
    """All required files exist"""
    print("\n📁 Testing file structure...")
    missing = [p for p in REQUIRED_FILES if not os.path.exists(os.path.join(_root(), p))]
    if missing:
        print(f"❌ Missing files: {missing}")
    else:
        print(f"✅ All {len(REQUIRED_FILES)} required files exist")
    assert not missing


def test_imports():
    """Every module imports and exposes its entry points"""
    print("🔍 Testing module imports...")
    sys.path.insert(0, _root())

    from src.core import field, groebner, hilbert, ideal, linalg, matrix, parser, polynomial, ring
    assert callable(groebner.groebner) and callable(ideal.saturate_ideal)
    print("✅ Core modules imported successfully")

    from src.homology import classifier, cohomology, resolution
    assert callable(resolution.minimal_resolution_betti) and callable(classifier.classify_curve)
    print("✅ Homology modules imported successfully")

    from src.lattice import arithmetic, blowup, chambers, cubic_surface
    assert len(cubic_surface.LINES) == 27
    print("✅ Lattice modules imported successfully")

    from src.utils import CheckRunner, DetqConfig, DetqError, Report, emit, get_config
    assert isinstance(get_config(), DetqConfig)
    print("✅ Utils modules imported successfully")

    from src.apps.cli import build_parser, lattice_main, main
    assert build_parser().prog == "detq"
    print("✅ Command line imported successfully")


def test_golden_manifest_matches_the_suites():
    """Every suite of the verification runner has a golden section"""
    print("\n📊 Testing golden manifest...")
    from src.apps.pipeline import load_golden
    from src.apps.verify import CASES

    golden = load_golden()
    missing = [case for case in CASES if case not in golden]
    assert not missing, f"no golden section for {missing}"
    print(f"✅ {sum(len(s) for s in golden.values())} golden values in {len(golden)} sections")


def main():
    """Run all tests"""
    print("🧮 detq - Structure Test")
    print("=" * 60)

    tests = [
        ("File Structure", test_file_structure),
        ("Module Imports", test_imports),
        ("Golden Manifest", test_golden_manifest_matches_the_suites),
    ]

    results = []
    for test_name, test_func in tests:
        try:
            test_func()
            results.append((test_name, True))
        except Exception as e:
            print(f"❌ {test_name} failed with exception: {e}")
            results.append((test_name, False))

    print("\n" + "=" * 60)
    print("📊 Test Results Summary:")

    passed = 0
    for test_name, result in results:
        status = "✅ PASS" if result else "❌ FAIL"
        print(f"  {status} - {test_name}")
        if result:
            passed += 1

    print(f"\n🎯 Overall: {passed}/{len(results)} tests passed")
    return passed == len(results)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
