from pathlib import Path

"""
File names used inside an output directory (--out).
Every command writes a manifest next to its tables so the directory can be regenerated.
"""


class OutputPaths:
    """
    Relative paths within an output directory.
    """
    manifest = Path('manifest.json')

    # demo
    exact = Path('exact.csv')
    noisy_final = Path('noisy_final.csv')
    reconstruction = Path('reconstruction.csv')
    pointwise_error = Path('pointwise_error.csv')
    error_report = Path('error_report.csv')
    plot_data = Path('plot_data.csv')

    # sweep / illposed
    sweep_table = Path('sweep.csv')
    illposed_table = Path('illposed.csv')

    # solve
    solve_output = Path('reconstruction.field')
    solve_report = Path('solve_report.txt')
