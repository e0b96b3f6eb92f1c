from cubic_beta import CubicBeta

cb = CubicBeta()

by_mean = cb.mean_regression(0.3, 14.0, gamma=0.354, delta=0.637)
by_mode = cb.modal_regression(0.3, 14.0, gamma=0.354, delta=0.637, family='scbeta')

print('mean regression: ', by_mean.params, by_mean.mean)
print('modal regression: ', by_mode.params, by_mode.mode.x_m)
