__version__ = '0.3.0'

release_notes = {
    '0.3.0': '''
        - Added the solve command for user-supplied field files
        - Tabulated diffusivity profiles (file:<path>) with monotone cubic interpolation
        - Audits (stability bound, error split, finite output) are recorded in manifest.json
    ''',
    '0.2.0': '''
        - Added the illposed command demonstrating amplification of high-frequency perturbations
        - Sweeps may run cells in parallel (BHCP_THREADS) with identical output
        - Levels may be measured in a frequency unit other than 1
    ''',
    '0.1.0': '''
        - Meyer projection, regularized backward solve and the level rule
        - Benchmarks 1 to 5 with spectral-oracle checks of their exact solutions
        - demo and sweep commands
    ''',
}


def get_current_release_notes():
    if __version__ in release_notes:
        return release_notes[__version__]
    return ''
