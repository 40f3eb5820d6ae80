"""Census of f-quandles by order: labeled tables, iso classes, twisted classes and no-quandle classes."""
import argparse
import json
import time

from fquandle.classify import classify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=4)
    ap.add_argument("--allow-large", action="store_true")
    ap.add_argument("--json", action="store_true", help="one JSON object per order")
    args = ap.parse_args()
    for n in range(1, args.max_order + 1):
        t0 = time.perf_counter()
        c = classify(n, allow_large=args.allow_large)
        row = {"order": n, "labeled": c.labeled_count, **c.summary_row(),
               "seconds": round(time.perf_counter() - t0, 3)}
        if args.json:
            print(json.dumps(row))
            continue
        print(f"order {n}: {row['labeled']} labeled, {row['iso_classes']} iso, "
              f"{row['twisted_classes']} twisted, {row['no_quandle_classes']} without a quandle "
              f"({row['seconds']}s)")
        for i, cl in enumerate(c.classes):
            if cl.contains_quandle:
                continue
            rep = c.tables[cl.members[0]]
            tags = [k for k in ("is_latin", "is_group_like") if getattr(cl, k)]
            print(f"  class {i} ({len(cl.members)} iso types) {' '.join(tags)}: {rep.rows()}")


if __name__ == "__main__":
    main()
