"""Parses RDF part files with rdflib and prints one line per file.

Output: "ok <path> <statements>" or "error <path> <message>". Exit status 0
when every file parsed, 1 otherwise, 2 when rdflib is unavailable.
"""
import gzip
import sys

try:
    import rdflib
except ImportError:
    print("error - rdflib not installed")
    sys.exit(2)

FORMATS = {".nt": "nt", ".nq": "nquads", ".trig": "trig", ".ttl": "turtle"}


def syntax_of(path):
    name = path[:-3] if path.endswith(".gz") else path
    for ext, fmt in FORMATS.items():
        if name.endswith(ext):
            return fmt
    raise ValueError("unknown extension")


def main(paths):
    failed = False
    for path in paths:
        try:
            opener = gzip.open if path.endswith(".gz") else open
            with opener(path, "rb") as f:
                data = f.read()
            ds = rdflib.Dataset()
            ds.parse(data=data, format=syntax_of(path))
            n = sum(1 for _ in ds.quads((None, None, None, None)))
            print(f"ok {path} {n}")
        except Exception as e:  # noqa: BLE001 - every failure is reported
            failed = True
            print(f"error {path} {str(e).splitlines()[0] if str(e) else type(e).__name__}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
