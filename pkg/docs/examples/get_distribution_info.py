from cubic_beta import CubicBeta

cb = CubicBeta()

d = cb.cbeta(2.61, 10.95, gamma=0.354, delta=0.637)

print('family: ', d.family)
print('params: ', d.params)
print('mean: ', d.mean)
print('variance: ', d.variance)
print('mode: ', d.mode.x_m, d.mode.kind)
print('median: ', d.quantile(0.5))
print('P(X < 0.2): ', d.cdf(0.2))
print('density at 0.2: ', d.pdf(0.2))
