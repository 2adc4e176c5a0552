#!/usr/bin/env python3
"""Smoke test for the zjkit extension module.

Build and stage the module first:

    cargo build --release -p zjkit-py
    cp target/release/libzjkit.so python/zjkit.so   # .dylib/.pyd elsewhere

then run `python3 python/smoke.py`.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import zjkit  # noqa: E402


def check(label, cond):
    status = "ok" if cond else "FAIL"
    print(f"  [{status}] {label}")
    if not cond:
        raise SystemExit(f"smoke test failed at: {label}")


def main():
    print("zjkit smoke test")

    # table arithmetic
    heis = zjkit.Group.heisenberg(3)
    check("Heis27 has order 27", heis.order == 27)
    check("Heis27 has exponent 3", heis.exponent() == 3)
    check("Heis27 is nonabelian", not heis.is_abelian())
    check("Heis27 center has order 3", heis.center().order == 3)

    # subgroup machinery
    subs = heis.all_subgroups()
    check("Heis27 has 19 subgroups", len(subs) == 19)
    whole = heis.whole_subgroup()
    jo = whole.thompson_subgroup("o")
    check("J_o(Heis27) is everything", jo.order == 27)
    score, members = whole.abelian_family("o")
    check("A_o(Heis27): four maximal abelians of order 9",
          score == 9 and len(members) == 4)

    # quotients and isomorphism
    qd3 = zjkit.Group.qd(3)
    check("Qd(3) has order 216", qd3.order == 216)
    base = qd3.subgroup([v * 24 for v in range(9)])
    sl23 = zjkit.Group.special_linear2(3)
    quot = qd3.quotient(qd3.whole_subgroup(), base)
    check("Qd(3)/base is SL(2,3)", quot.is_isomorphic(sl23) is not None)

    # p-local predicates
    stable, witness = qd3.is_p_stable(3)
    check("Qd(3) is not 3-stable", not stable and witness is not None)
    w_sub, w_g = witness
    check("the stability witness subgroup sits in the base",
          set(w_sub) <= {v * 24 for v in range(9)})
    check("Heis27 is 3-stable", heis.is_p_stable(3)[0])

    a4 = zjkit.Group.alternating(4)
    nilp, complement = a4.is_p_nilpotent(3)
    check("A4 is 3-nilpotent with complement V4",
          nilp and complement.order == 4)
    check("A4 is Qd(3)-free", a4.is_qdp_free(3)[0])
    free, qd_witness = qd3.is_qdp_free(3)
    check("Qd(3) is not Qd(3)-free", not free and qd_witness is not None)

    # abelian replacement in the wreath product
    wreath = zjkit.Group.wreath_cp_cp(3)
    top = wreath.closure([1])
    base27 = wreath.subgroup([3 * n for n in range(27)])
    a_star = wreath.replace(top, base27)
    check("replacement in Z3wrZ3 yields the diagonal (the center)",
          a_star == wreath.center())

    # conjugacy functor evaluation
    s3z3 = zjkit.Group.direct_product(zjkit.Group.symmetric(3),
                                      zjkit.Group.cyclic(3))
    w_value = s3z3.w_d(3, "ZJ_o", [0, 1, 2], s3z3.sylow(3))
    check("W_D picks out the distinguished factor",
          w_value.elements() == [0, 1, 2])

    # a small end-to-end campaign
    summary = zjkit.run_campaign(max_order=24, checks=["B", "H", "lemmas"])
    check("campaign produced records", summary["records"] > 0)
    check("campaign reported zero violations", summary["violations"] == 0)

    print(f"all checks passed ({summary['records']} campaign records)")


if __name__ == "__main__":
    main()
