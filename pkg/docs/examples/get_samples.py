from cubic_beta import CubicBeta

cb = CubicBeta(seed=7)

hba1 = cb.scbeta(13.09, 19.30, gamma=0.041, delta=0.682)
values = cb.sample(hba1, n=1000)

print('sample mean: ', values.mean())
print('distribution mean: ', hba1.mean)
print('accepted: ', cb.rejection_stats.accepted)
print('proposed: ', cb.rejection_stats.proposed)
print('efficiency: ', cb.rejection_stats.efficiency)
print('expected efficiency: ', hba1.expected_efficiency)
