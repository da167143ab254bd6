package app.net;

import android.os.PowerManager;

public class ReacquireSequential {
    public void keepAwake(PowerManager.WakeLock lock) {
        lock.acquire();
        download();
        lock.acquire();
        lock.release();
    }

    private void download() {
    }
}
