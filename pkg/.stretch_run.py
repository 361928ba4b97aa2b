import time
from franklopt.models import ModelInstance, ModelKind
from franklopt.solver import solve
from franklopt.verify import TableEntry, append_cache

t0 = time.time()
out = solve(ModelInstance(ModelKind.F, 6, 24), workers=2)
elapsed = time.time() - t0
print(f"f(6,24): status={out.status.value} value={out.value} "
      f"nodes={out.stats.nodes} time={elapsed:.0f}s", flush=True)
if out.status.value == "optimal":
    append_cache("/root/pkg/data/stretch.cache", {("f", 6, 24): TableEntry(out.value, "solver")})
    print("cached", flush=True)
