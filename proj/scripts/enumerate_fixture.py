#!/usr/bin/env python3
"""Independent enumeration oracle for graph fixtures.

Reads a trace file (line-delimited JSON) and counts, by direct enumeration,
the domains that ever resolved, the distinct addresses, and the distinct
(domain, address) pairs. Emits the counts as JSON for the acceptance suite
to compare against the library's graph builder.
"""

import json
import sys


def render_density(edges: int, vd: int, vr: int, digits: int = 4) -> str:
    if vd == 0 or vr == 0:
        return "0." + "0" * digits
    num, den = edges, vd * vr
    scale = 10 ** digits
    scaled = (num * scale + den // 2) // den  # round half away from zero
    return f"{scaled // scale}.{scaled % scale:0{digits}d}"


def main() -> None:
    if len(sys.argv) != 2:
        sys.exit(f"usage: {sys.argv[0]} TRACE_FILE")
    domains = set()
    addresses = set()
    pairs = set()
    with open(sys.argv[1], encoding="utf-8") as fh:
        next(fh)  # header line
        for line in fh:
            obs = json.loads(line)
            if obs["status"] != "ok":
                continue
            domains.add(obs["domain"])
            for addr in obs["records"]:
                addresses.add(addr)
                pairs.add((obs["domain"], addr))
    counts = {
        "domains": len(domains),
        "records": len(addresses),
        "vertices": len(domains) + len(addresses),
        "edges": len(pairs),
        "density": render_density(len(pairs), len(domains), len(addresses)),
    }
    json.dump(counts, sys.stdout, indent=2)
    print()


if __name__ == "__main__":
    main()
