from se2wavelet.main import run

run()
