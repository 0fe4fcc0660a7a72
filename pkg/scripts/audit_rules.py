#!/usr/bin/env python3
"""Print the per-flavor rule table and compare it with docs/rules_manifest.md."""
import pathlib
import re
import sys

from mfbridge.rules import list_rules, load_catalog
from mfbridge.set_syntax import TheoryFlavor

MANIFEST = pathlib.Path(__file__).parent.parent / "docs" / "rules_manifest.md"
_LINE = re.compile(r"^([a-z0-9]+\.[a-z0-9-]+) \| ([a-z ]+)$")


def main() -> int:
    print(f"{'rule':40} czf izf zf")
    for s in load_catalog():
        marks = ["x" if fl in s.flavors else "." for fl in ("czf", "izf", "zf")]
        tag = " (derived)" if s.derived else ""
        print(f"{s.id:40} {marks[0]:3} {marks[1]:3} {marks[2]:2}{tag}")
    print()
    for flavor in TheoryFlavor:
        print(f"{flavor.value}: {len(list_rules(flavor))} schemas")

    manifest = {}
    for line in MANIFEST.read_text().splitlines():
        if line.startswith("## Derived"):
            break
        m = _LINE.match(line.strip())
        if m:
            manifest[m.group(1)] = frozenset(m.group(2).split())
    catalog = {s.id: s.flavors for s in load_catalog() if not s.derived}
    if manifest == catalog:
        print("manifest: in sync with the catalog")
        return 0
    only_m = set(manifest) - set(catalog)
    only_c = set(catalog) - set(manifest)
    diff = {k for k in set(manifest) & set(catalog) if manifest[k] != catalog[k]}
    print(f"manifest drift: only-manifest={sorted(only_m)} "
          f"only-catalog={sorted(only_c)} flavor-diff={sorted(diff)}")
    return 1


if __name__ == "__main__":
    sys.exit(main())
