"""Emit the rationality certificate, verify it, then break it on purpose."""

import json

from brauerconic.certificate import certify_cot, dumps, verify

cert = certify_cot(timestamp="2000-01-01T00:00:00Z")
print("conclusion:", cert["conclusion"])
for step in cert["verdicts"]:
    print(f"  {step['step']:<22} {'ok' if step['passed'] else 'FAILED'}")
print("verify:", verify(json.loads(dumps(cert))) or "no problems")

# change one witness and the verifier notices
remark = certify_cot("remark", height_bound=2, timestamp="2000-01-01T00:00:00Z")
step = next(s for s in remark["verdicts"] if s["step"] == "remark_point")
step["evaluations"][0]["decision"]["steps"][0]["witness"] = ["11"]
print()
print("after editing the square root of 144 to 11:")
for problem in verify(remark):
    print("  ", problem)

wrong = certify_cot(target="sym(u, 2*v)", timestamp="t")
print()
print("against (u, 2v):", wrong["conclusion"], "at", wrong["witness_divisor"], "= 0")
