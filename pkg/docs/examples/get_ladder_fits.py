import os

from cubic_beta import CubicBeta
from cubic_beta.cli import load_column

cb = CubicBeta()

raw = load_column(os.path.join(os.path.dirname(__file__), 'bodyfat.csv'), 'bodyfat')
data = cb.dataset(raw, interval=(0, 100), name='bodyfat')

fits = cb.fit_ladder(data)

for family, fit in fits.items():
    print(family, fit.params, '-loglik: ', fit.neg_loglik)

statistic, p_value = cb.lr_test(fits['qbeta'], fits['cbeta'])
print('qbeta vs cbeta: ', statistic, p_value)
print('fits: ', cb.fits)
