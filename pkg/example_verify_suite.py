"""
Example demonstration of the verification harness.

This script runs the lemma, theorem and sharpness suites for a few seeds
and prints the per-result table and any failing cells.
"""

from src.harness import SuiteConfig, TheoremHarness


def main():
    """
    Run a small verification sweep with the verbose table.
    """
    harness = TheoremHarness(verbose=True)
    config = SuiteConfig(
        suites=["lemmas", "thm1", "thm2", "thm3", "sharpness"],
        seeds=3,
        dims=[2, 4],
    )
    report = harness.run(config)
    summary = harness.get_suite_summary(report)

    print()
    print(f"Cells: {summary['total']}")
    print(f"Worst residual/threshold ratio: {summary['worst_ratio']:.3e}")
    if summary["failing"]:
        print("Failing cells:")
        for result_id, seed, dim in summary["failing"]:
            print(f"  {result_id} seed={seed} dim={dim}")
    else:
        print("No failing cells.")


if __name__ == "__main__":
    main()
